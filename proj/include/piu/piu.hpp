// Copyright 2026 The piu Authors
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


#ifndef PIU_PIU_HPP_
#define PIU_PIU_HPP_

#include "piu/distribution.hpp"
#include "piu/evidence.hpp"
#include "piu/nhpp.hpp"
#include "piu/renewal.hpp"
#include "piu/rng.hpp"
#include "piu/semi_markov.hpp"
#include "piu/special.hpp"
#include "piu/superposition.hpp"
#include "piu/timeline.hpp"
#include "piu/validators.hpp"

#endif // PIU_PIU_HPP_
