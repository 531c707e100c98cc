// Copyright 2026 The takg Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Engineering facts about the plant, read from two CSV files:
//
//   hierarchy.csv  id,class,parent          (class: ISA88 level, parent may be empty)
//   devices.csv    id,kind,host,property,semantic_label   (kind: Sensor|Actuator)
//
// Header rows are mandatory. Fields may be double-quoted.

#pragma once

#include <istream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "takg/error.hpp"
#include "takg/kg/vocabulary.hpp"

namespace takg::kg {

enum class DeviceKind { Sensor, Actuator };

struct HierarchyRow {
  std::string id;
  std::string level;  // ISA88 class name, e.g. "Unit"
  std::string parent;  // empty for roots
};

struct DeviceRow {
  std::string id;
  DeviceKind kind = DeviceKind::Sensor;
  std::string host;
  std::string property;
  std::string semantic_label;
};

struct PlantFacts {
  std::vector<HierarchyRow> hierarchy;
  std::vector<DeviceRow> devices;

  const HierarchyRow* entity(std::string_view id) const {
    for (const auto& h : hierarchy) {
      if (h.id == id) return &h;
    }
    return nullptr;
  }

  const DeviceRow* device(std::string_view id) const {
    for (const auto& d : devices) {
      if (d.id == id) return &d;
    }
    return nullptr;
  }
};

inline std::optional<Iri> isa88_class(std::string_view level) {
  static const std::map<std::string, Iri, std::less<>> classes = {
      {"Enterprise", isa88::Enterprise}, {"Site", isa88::Site},
      {"Area", isa88::Area},             {"ProcessCell", isa88::ProcessCell},
      {"Unit", isa88::Unit},             {"EquipmentModule", isa88::EquipmentModule},
      {"ControlModule", isa88::ControlModule}};
  auto it = classes.find(level);
  if (it == classes.end()) return std::nullopt;
  return it->second;
}

/// Splits one CSV record. Handles double-quoted fields with "" escapes.
inline std::vector<std::string> split_csv_line(std::string_view line) {
  std::vector<std::string> fields(1);
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        fields.back() += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        fields.back() += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      fields.emplace_back();
    } else if (c != '\r') {
      fields.back() += c;
    }
  }
  if (quoted) throw Error(ErrorCode::InvalidFormat, "unterminated quoted CSV field");
  return fields;
}

namespace detail {

inline std::vector<std::vector<std::string>> read_csv(std::istream& is, const std::vector<std::string>& header,
                                                      const std::string& file) {
  std::string line;
  if (!std::getline(is, line)) throw Error(ErrorCode::InvalidFormat, file + ": missing header row");
  if (line.starts_with("\xEF\xBB\xBF")) line.erase(0, 3);
  if (split_csv_line(line) != header) {
    std::string expected;
    for (const auto& h : header) expected += (expected.empty() ? "" : ",") + h;
    throw Error(ErrorCode::InvalidFormat, file + ": header must be '" + expected + "'");
  }
  std::vector<std::vector<std::string>> rows;
  std::size_t line_no = 1;
  while (std::getline(is, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    auto fields = split_csv_line(line);
    if (fields.size() != header.size()) {
      throw Error(ErrorCode::InvalidFormat, file + " line " + std::to_string(line_no) + ": expected " +
                                                std::to_string(header.size()) + " fields");
    }
    rows.push_back(std::move(fields));
  }
  return rows;
}

}  // namespace detail

inline std::vector<HierarchyRow> read_hierarchy_csv(std::istream& is) {
  std::vector<HierarchyRow> out;
  for (auto& f : detail::read_csv(is, {"id", "class", "parent"}, "hierarchy.csv")) {
    out.push_back(HierarchyRow{std::move(f[0]), std::move(f[1]), std::move(f[2])});
  }
  return out;
}

inline std::vector<DeviceRow> read_devices_csv(std::istream& is) {
  std::vector<DeviceRow> out;
  for (auto& f : detail::read_csv(is, {"id", "kind", "host", "property", "semantic_label"}, "devices.csv")) {
    DeviceRow d;
    d.id = std::move(f[0]);
    if (f[1] == "Sensor") {
      d.kind = DeviceKind::Sensor;
    } else if (f[1] == "Actuator") {
      d.kind = DeviceKind::Actuator;
    } else {
      throw Error(ErrorCode::InvalidFormat, "devices.csv: kind of '" + d.id + "' must be Sensor or Actuator");
    }
    d.host = std::move(f[2]);
    d.property = std::move(f[3]);
    d.semantic_label = std::move(f[4]);
    out.push_back(std::move(d));
  }
  return out;
}

/// Checks ids, classes, parent and host references, and acyclicity.
inline void validate(const PlantFacts& facts) {
  std::map<std::string, const HierarchyRow*> entities;
  std::set<std::string> ids;
  for (const auto& h : facts.hierarchy) {
    if (h.id.empty()) throw Error(ErrorCode::InvalidFormat, "hierarchy row without id");
    if (!isa88_class(h.level)) {
      throw Error(ErrorCode::InvalidFormat, "'" + h.id + "' has unknown ISA88 class '" + h.level + "'");
    }
    if (!ids.insert(h.id).second) throw Error(ErrorCode::DuplicateEntity, "'" + h.id + "' defined twice");
    entities.emplace(h.id, &h);
  }
  for (const auto& d : facts.devices) {
    if (d.id.empty()) throw Error(ErrorCode::InvalidFormat, "device row without id");
    if (!ids.insert(d.id).second) throw Error(ErrorCode::DuplicateEntity, "'" + d.id + "' defined twice");
    if (!entities.contains(d.host)) {
      throw Error(ErrorCode::DanglingParent, "device '" + d.id + "' is hosted by unknown '" + d.host + "'");
    }
    if (d.property.empty()) throw Error(ErrorCode::InvalidFormat, "device '" + d.id + "' has no property");
  }
  for (const auto& h : facts.hierarchy) {
    if (!h.parent.empty() && !entities.contains(h.parent)) {
      throw Error(ErrorCode::DanglingParent, "'" + h.id + "' has unknown parent '" + h.parent + "'");
    }
  }
  for (const auto& h : facts.hierarchy) {
    std::set<std::string> path{h.id};
    for (const HierarchyRow* cur = &h; !cur->parent.empty();) {
      cur = entities.at(cur->parent);
      if (!path.insert(cur->id).second) {
        throw Error(ErrorCode::CyclicHierarchy, "hierarchy cycle through '" + h.id + "'");
      }
    }
  }
}

inline PlantFacts read_plant_facts(std::istream& hierarchy, std::istream& devices) {
  PlantFacts facts{read_hierarchy_csv(hierarchy), read_devices_csv(devices)};
  validate(facts);
  return facts;
}

/// Reference facts of the five-tank mixing plant (same content as
/// data/five_tank/*.csv).
inline constexpr std::string_view kFiveTankHierarchyCsv =
    "id,class,parent\n"
    "HSU,Enterprise,\n"
    "Campus,Site,HSU\n"
    "AutomationLab,Area,Campus\n"
    "MixingModule,ProcessCell,AutomationLab\n"
    "Tank_B201,Unit,MixingModule\n"
    "Tank_B202,Unit,MixingModule\n"
    "Tank_B203,Unit,MixingModule\n"
    "Tank_B204,Unit,MixingModule\n"
    "Tank_B205,Unit,MixingModule\n"
    "PumpStation,ControlModule,MixingModule\n";

inline constexpr std::string_view kFiveTankDevicesCsv =
    "id,kind,host,property,semantic_label\n"
    "tank_B201.level,Sensor,Tank_B201,B201.level,Filling Level of Tank_B201\n"
    "B201_isFull,Sensor,Tank_B201,B201.full,Full Indicator of Tank_B201\n"
    "tank_B202.level,Sensor,Tank_B202,B202.level,Filling Level of Tank_B202\n"
    "B202_isFull,Sensor,Tank_B202,B202.full,Full Indicator of Tank_B202\n"
    "tank_B203.level,Sensor,Tank_B203,B203.level,Filling Level of Tank_B203\n"
    "B203_isFull,Sensor,Tank_B203,B203.full,Full Indicator of Tank_B203\n"
    "tank_B204.level,Sensor,Tank_B204,B204.level,Filling Level of Tank_B204\n"
    "tank_B204.temperature,Sensor,Tank_B204,B204.temperature,Fluid Temperature of Tank_B204\n"
    "tank_B205.level,Sensor,Tank_B205,B205.level,Filling Level of Tank_B205\n"
    "P201.massflow,Sensor,PumpStation,P201.flow,Mass Flow through Pump P201\n"
    "V201,Actuator,MixingModule,ValveIn1,Valve Opening State\n"
    "V202,Actuator,MixingModule,ValveIn2,Valve Opening State\n"
    "V203,Actuator,MixingModule,ValveIn3,Valve Opening State\n"
    "V204,Actuator,MixingModule,ValveV204,Valve Opening State\n"
    "V205,Actuator,MixingModule,ValveDiscrete,Valve Opening State\n"
    "V206,Actuator,MixingModule,ValveOut1,Valve Opening State\n"
    "V207,Actuator,MixingModule,ValveOut2,Valve Opening State\n"
    "V208,Actuator,MixingModule,ValveOut3,Valve Opening State\n"
    "P201,Actuator,MixingModule,PumpP201,Pump Activation State\n";

inline PlantFacts five_tank_facts() {
  std::istringstream h{std::string(kFiveTankHierarchyCsv)};
  std::istringstream d{std::string(kFiveTankDevicesCsv)};
  return read_plant_facts(h, d);
}

}  // namespace takg::kg
