#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <optional>

#include "landscape/common.hpp"
#include "landscape/dataset.hpp"
#include "landscape/network.hpp"

namespace landscape {

using BigInt = boost::multiprecision::cpp_int;

// True iff any neuron put any sample on the other side (or exactly onto its
// hyperplane): exists (i, j) with (w_old_j . x_i)(w_new_j . x_i) <= 0.
bool crossed_boundary(const NetworkWeights& w_old, const NetworkWeights& w_new,
                      const Dataset& data);

// Distances from w to the nearest sample hyperplane along +direction (s1) and
// -direction (s2); disengaged sides are empty (open cell along this ray).
struct RayHit {
    std::optional<double> s1;
    std::optional<double> s2;
};

// s_i = -(w . x_i) / (direction . x_i); samples with direction . x_i = 0
// contribute no hit. Throws when w lies exactly on a hyperplane.
RayHit ray_hit_distances(const Vec& w, const Vec& direction, const Dataset& data);

// Max over n_directions sampled unit directions (normalized Gaussians) of the
// chord s1 + s2; nullopt when any sampled ray escapes on either side (open
// cell). Directions come from the stream (seed, 0).
std::optional<double> cell_diameter(const Vec& w, const Dataset& data, int n_directions,
                                    std::uint64_t seed);

struct MeanDiameterResult {
    std::optional<double> mean;  // over closed cells; empty when all were open
    int closed_cells = 0;
    int open_cells = 0;
};

// n_weights draws uniform on [-1,1]^D (redrawn if exactly on a hyperplane),
// each probed with 10 D directions. Weight t uses stream (seed, 2t) and its
// directions stream (seed, 2t+1).
MeanDiameterResult mean_diameter(const Dataset& data, int n_weights, std::uint64_t seed);

// Cells an arrangement of N generic affine hyperplanes cuts R^dim into:
// sum_{i=0}^{dim} C(N, i), exact. (Sample hyperplanes through the origin form
// a central arrangement and have fewer cells; this is the generic count.)
BigInt cell_count(long N, int dim);

}  // namespace landscape
