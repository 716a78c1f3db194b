// Copyright 2026 The bargain Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef BARGAIN_BARGAIN_HPP
#define BARGAIN_BARGAIN_HPP

#include "bargain/golden_section.hpp"
#include "bargain/json_io.hpp"
#include "bargain/market_equilibrium.hpp"
#include "bargain/market_protocol.hpp"
#include "bargain/nash_product.hpp"
#include "bargain/two_player.hpp"
#include "bargain/types.hpp"
#include "bargain/verifier.hpp"

#endif  // BARGAIN_BARGAIN_HPP
