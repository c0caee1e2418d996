/*
   Copyright 2026 The fock authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

       http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/
#pragma once

// Umbrella header: the whole library.
#include "fock/catalog.hpp"
#include "fock/codim1.hpp"
#include "fock/common.hpp"
#include "fock/factor.hpp"
#include "fock/inverse.hpp"
#include "fock/io.hpp"
#include "fock/opnorm.hpp"
#include "fock/poly.hpp"
#include "fock/section.hpp"
#include "fock/vncheck.hpp"
#include "fock/word.hpp"
