// Copyright 2026 The fwsim Authors
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

#ifndef FWSIM_FWSIM_HPP
#define FWSIM_FWSIM_HPP

#include "fwsim/bits.hpp"
#include "fwsim/born.hpp"
#include "fwsim/clifford.hpp"
#include "fwsim/cover.hpp"
#include "fwsim/dense_frame.hpp"
#include "fwsim/errors.hpp"
#include "fwsim/frame.hpp"
#include "fwsim/oracle.hpp"
#include "fwsim/parallel.hpp"
#include "fwsim/phase_space.hpp"
#include "fwsim/randgen.hpp"
#include "fwsim/rng.hpp"
#include "fwsim/scan.hpp"
#include "fwsim/states.hpp"
#include "fwsim/verify.hpp"
#include "fwsim/weaksim.hpp"

#endif
