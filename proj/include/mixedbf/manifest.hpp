#pragma once

#include "mixedbf/kernels.hpp"
#include "mixedbf/weights.hpp"

#include <cstdint>
#include <sstream>
#include <string>

namespace mixedbf {

// Reproducibility record embedded in every CLI output: the solved operator
// constants, the orientation convention, grid and tolerance settings.
struct RunManifest {
    std::string version = "0.1.0";
    uint64_t seed = 1;
    int threads = 1;
    double rel_tol = 1e-6;
    int grid_order = 8;
    int base_panels = 1;
    int max_level = 3;

    std::string json() const {
        auto [c1, c2] = kernels::lambda_constants();
        auto [a1, a2] = kernels::gauge_constants();
        std::ostringstream os;
        os << "{\"version\":\"" << version << "\""
           << ",\"lambda_constants\":[" << to_string(c1) << "," << to_string(c2) << "]"
           << ",\"gauge_constants\":[" << to_string(a1) << "," << to_string(a2) << "]"
           << ",\"orientation\":\"top word dz^dzbar^dt per vertex; values are coefficients against"
              " the product of dz dzbar dt volume elements ((-2i)^m relates them to the real"
              " Lebesgue integral)\""
           << ",\"seed\":" << seed << ",\"threads\":" << threads << ",\"rel_tol\":" << rel_tol
           << ",\"grid_order\":" << grid_order << ",\"base_panels\":" << base_panels
           << ",\"max_level\":" << max_level << "}";
        return os.str();
    }

    static RunManifest from(const weights::WeightOptions& opt, uint64_t seed, int threads) {
        RunManifest m;
        m.seed = seed;
        m.threads = threads;
        m.rel_tol = opt.box.rel_tol;
        m.grid_order = opt.box.order;
        m.base_panels = opt.box.base_panels;
        m.max_level = opt.box.max_level;
        return m;
    }
};

}  // namespace mixedbf
