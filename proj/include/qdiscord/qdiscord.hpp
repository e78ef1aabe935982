// Copyright 2026 The qdiscord Authors
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

// Numerical core. io.hpp, report.hpp, verify.hpp and audit.hpp also need
// nlohmann/json and are included separately.

#pragma once

#include "qdiscord/basis.hpp"
#include "qdiscord/entropic.hpp"
#include "qdiscord/error.hpp"
#include "qdiscord/geometric.hpp"
#include "qdiscord/linalg.hpp"
#include "qdiscord/measurement.hpp"
#include "qdiscord/optimizer.hpp"
#include "qdiscord/qstate.hpp"
#include "qdiscord/sampling.hpp"
