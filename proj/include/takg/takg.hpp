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

// Everything except the pipeline commands, which need OpenSSL.

#pragma once

#include "takg/anoda.hpp"
#include "takg/anomaly_io.hpp"
#include "takg/automaton_io.hpp"
#include "takg/error.hpp"
#include "takg/event_io.hpp"
#include "takg/event_model.hpp"
#include "takg/fivetank.hpp"
#include "takg/kg/competency.hpp"
#include "takg/kg/mapper.hpp"
#include "takg/kg/plant_facts.hpp"
#include "takg/kg/vocabulary.hpp"
#include "takg/otala.hpp"
#include "takg/rdf/graph.hpp"
#include "takg/rdf/query.hpp"
#include "takg/rdf/turtle.hpp"
#include "takg/timed_automaton.hpp"
