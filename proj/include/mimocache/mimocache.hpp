/*
   Copyright 2026 The mimocache Authors

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

#include "mimocache/analysis/bounds.hpp"
#include "mimocache/analysis/coverage_table.hpp"
#include "mimocache/analysis/distance.hpp"
#include "mimocache/analysis/exact.hpp"
#include "mimocache/analysis/stp.hpp"
#include "mimocache/analysis/tables.hpp"
#include "mimocache/errors.hpp"
#include "mimocache/harness/commands.hpp"
#include "mimocache/harness/config.hpp"
#include "mimocache/harness/csv.hpp"
#include "mimocache/harness/validate.hpp"
#include "mimocache/network/content.hpp"
#include "mimocache/network/deployment.hpp"
#include "mimocache/network/parallel.hpp"
#include "mimocache/network/params.hpp"
#include "mimocache/network/rng.hpp"
#include "mimocache/network/simulator.hpp"
#include "mimocache/numerics/laplace.hpp"
#include "mimocache/numerics/linalg.hpp"
#include "mimocache/numerics/quadrature.hpp"
#include "mimocache/numerics/special.hpp"
#include "mimocache/optimizer/caching.hpp"
#include "mimocache/optimizer/oracle.hpp"
#include "mimocache/types.hpp"
