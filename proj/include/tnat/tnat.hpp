/*
 *   Copyright 2026 The tnat Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef TNAT_TNAT_HPP_
#define TNAT_TNAT_HPP_

#include "tnat/enumerate.hpp"
#include "tnat/epset.hpp"
#include "tnat/error.hpp"
#include "tnat/extnat.hpp"
#include "tnat/finmonoid.hpp"
#include "tnat/io.hpp"
#include "tnat/pairing.hpp"
#include "tnat/rca.hpp"
#include "tnat/term.hpp"
#include "tnat/term_json.hpp"
#include "tnat/transversal.hpp"
#include "tnat/witnesses.hpp"

#endif  // TNAT_TNAT_HPP_
