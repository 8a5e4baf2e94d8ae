// Copyright 2026 The kerrsim Authors
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

#pragma once

#include "kerrsim/common.hpp"
#include "kerrsim/dark_state.hpp"
#include "kerrsim/doppler.hpp"
#include "kerrsim/hamiltonian.hpp"
#include "kerrsim/kerr.hpp"
#include "kerrsim/level_scheme.hpp"
#include "kerrsim/lindblad.hpp"
#include "kerrsim/phase_gate.hpp"
#include "kerrsim/rubidium.hpp"
#include "kerrsim/susceptibility.hpp"
