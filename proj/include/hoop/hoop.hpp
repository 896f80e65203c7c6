/*
 Copyright 2026 The hoopctl Authors

 Licensed under the Apache License, Version 2.0 (the "License");
 you may not use this file except in compliance with the License.
 You may obtain a copy of the License at

      https://www.apache.org/licenses/LICENSE-2.0

 Unless required by applicable law or agreed to in writing, software
 distributed under the License is distributed on an "AS IS" BASIS,
 WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 See the License for the specific language governing permissions and
 limitations under the License.
*/

#ifndef HOOP_HOOP_HPP
#define HOOP_HOOP_HPP

#include "hoop/certificate.hpp"
#include "hoop/config.hpp"
#include "hoop/controller.hpp"
#include "hoop/error.hpp"
#include "hoop/geometry.hpp"
#include "hoop/params.hpp"
#include "hoop/plant.hpp"
#include "hoop/reference.hpp"
#include "hoop/regularizer.hpp"
#include "hoop/rk4.hpp"
#include "hoop/sim.hpp"

#endif // HOOP_HOOP_HPP
