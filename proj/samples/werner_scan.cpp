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

// Two-qubit Werner states: geometric and entropic discord next to the
// closed form, for a handful of x values.

#include "qdiscord/qdiscord.hpp"

#include <cstdio>

int main() {
    using namespace qdiscord;
    OptimizerConfig cfg;
    cfg.restarts = 16;
    std::printf("%6s %12s %12s %12s %12s\n", "x", "closed", "geo_AB", "geo_A", "D_AB");
    for (double x : {-1.0, -0.5, 0.0, 0.5, 0.8, 1.0}) {
        const BipartiteState rho = werner(2, x);
        const auto warm = std::vector<std::vector<double>>{identity_params(2, 2)};
        std::printf("%6.2f %12.8f %12.8f %12.8f %12.8f\n", x, werner_geo_closed(2, x),
                    geo_discord_two_sided(rho, cfg, warm).value, geo_discord_one_sided(rho, Side::A, cfg).value,
                    discord_two_sided(rho, cfg).value);
    }
    return 0;
}
