// Copyright 2026 The rrldp Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
#pragma once

// Umbrella header.

#include "rrldp/analytics.hpp"
#include "rrldp/card_distribution.hpp"
#include "rrldp/csv.hpp"
#include "rrldp/dataset.hpp"
#include "rrldp/deck.hpp"
#include "rrldp/errors.hpp"
#include "rrldp/manifest.hpp"
#include "rrldp/mechanisms.hpp"
#include "rrldp/oracle.hpp"
#include "rrldp/population.hpp"
#include "rrldp/random.hpp"
#include "rrldp/report.hpp"
#include "rrldp/simulation.hpp"
