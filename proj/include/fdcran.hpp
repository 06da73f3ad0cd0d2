// SPDX-License-Identifier: Apache-2.0
//
// fdcran - achievable rates of half/full-duplex cellular systems with C-RAN
// Copyright (C) 2026 The fdcran authors
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


#pragma once

#include "fdcran/config.hpp"
#include "fdcran/core.hpp"
#include "fdcran/oracle.hpp"
#include "fdcran/power_search.hpp"
#include "fdcran/rates.hpp"
#include "fdcran/report.hpp"
#include "fdcran/spectral.hpp"
#include "fdcran/sweep.hpp"
