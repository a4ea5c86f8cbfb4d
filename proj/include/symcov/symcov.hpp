/**
 * Copyright 2026 The symcov Authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *   http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */
#ifndef SYMCOV_SYMCOV_HPP
#define SYMCOV_SYMCOV_HPP

#include "symcov/algebra.hpp"
#include "symcov/cov_kind.hpp"
#include "symcov/dataset.hpp"
#include "symcov/error.hpp"
#include "symcov/goodness_of_fit.hpp"
#include "symcov/interval.hpp"
#include "symcov/io.hpp"
#include "symcov/matrix.hpp"
#include "symcov/microdata.hpp"
#include "symcov/model_select.hpp"
#include "symcov/normal.hpp"
#include "symcov/parallel.hpp"
#include "symcov/population.hpp"
#include "symcov/random.hpp"
#include "symcov/sample_stats.hpp"
#include "symcov/svg_pairs.hpp"
#include "symcov/weights.hpp"

#endif // SYMCOV_SYMCOV_HPP
