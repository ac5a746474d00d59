// SPDX-License-Identifier: Apache-2.0
//
// rhsim: switch-controlled reconfigurable holographic surface link simulator
// Copyright (C) 2026 rhsim contributors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#ifndef rhsim_rhsim_H
#define rhsim_rhsim_H

#include "rhsim/architectures.hpp"
#include "rhsim/channel.hpp"
#include "rhsim/digital.hpp"
#include "rhsim/holographic.hpp"
#include "rhsim/link.hpp"
#include "rhsim/power.hpp"
#include "rhsim/rng.hpp"
#include "rhsim/scenario.hpp"
#include "rhsim/sweep.hpp"

#endif
