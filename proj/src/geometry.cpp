#include "landscape/geometry.hpp"

#include <cmath>
#include <random>

#include "landscape/rng.hpp"

namespace landscape {

bool crossed_boundary(const NetworkWeights& w_old, const NetworkWeights& w_new,
                      const Dataset& data) {
    if (w_old.W.rows() != w_new.W.rows() || w_old.W.cols() != w_new.W.cols() ||
        w_old.D() != data.D())
        throw dimension_error("crossed_boundary: shape mismatch");
    const Mat a = data.X * w_old.W.transpose();
    const Mat b = data.X * w_new.W.transpose();
    return (a.array() * b.array() <= 0.0).any();
}

RayHit ray_hit_distances(const Vec& w, const Vec& direction, const Dataset& data) {
    if (w.size() != data.D() || direction.size() != data.D())
        throw dimension_error("ray_hit_distances: shape mismatch");
    const Vec num = data.X * w;
    const Vec den = data.X * direction;
    RayHit hit;
    for (int i = 0; i < data.N(); ++i) {
        if (num(i) == 0.0) throw numerical_error("ray_hit_distances: w lies on a hyperplane");
        if (den(i) == 0.0) continue;  // ray parallel to this hyperplane
        const double s = -num(i) / den(i);
        if (s > 0.0) {
            if (!hit.s1 || s < *hit.s1) hit.s1 = s;
        } else if (s < 0.0) {
            if (!hit.s2 || -s < *hit.s2) hit.s2 = -s;
        }
    }
    return hit;
}

std::optional<double> cell_diameter(const Vec& w, const Dataset& data, int n_directions,
                                    std::uint64_t seed) {
    if (n_directions < 1) throw config_error("cell_diameter: need n_directions >= 1");
    auto eng = make_engine(seed, 0);
    std::normal_distribution<double> gauss(0.0, 1.0);
    const int D = data.D();

    // One GEMM for all ray denominators; numerators are shared across rays.
    Mat dirs(n_directions, D);
    for (int t = 0; t < n_directions; ++t) {
        double norm = 0.0;
        do {
            for (int c = 0; c < D; ++c) dirs(t, c) = gauss(eng);
            norm = dirs.row(t).norm();
        } while (norm == 0.0);
        dirs.row(t) /= norm;
    }
    const Vec num = data.X * w;
    for (int i = 0; i < data.N(); ++i)
        if (num(i) == 0.0) throw numerical_error("cell_diameter: w lies on a hyperplane");
    const Mat den = data.X * dirs.transpose();  // N x n_directions

    double best = 0.0;
    for (int t = 0; t < n_directions; ++t) {
        double s1 = 0.0, s2 = 0.0;
        bool has1 = false, has2 = false;
        for (int i = 0; i < data.N(); ++i) {
            if (den(i, t) == 0.0) continue;
            const double s = -num(i) / den(i, t);
            if (s > 0.0) {
                if (!has1 || s < s1) s1 = s;
                has1 = true;
            } else if (s < 0.0) {
                if (!has2 || -s < s2) s2 = -s;
                has2 = true;
            }
        }
        if (!has1 || !has2) return std::nullopt;  // escapes: open cell
        best = std::max(best, s1 + s2);
    }
    return best;
}

MeanDiameterResult mean_diameter(const Dataset& data, int n_weights, std::uint64_t seed) {
    if (n_weights < 1) throw config_error("mean_diameter: need n_weights >= 1");
    if (data.N() < 1) throw data_error("mean_diameter: no samples, no hyperplanes");
    const int D = data.D();
    MeanDiameterResult out;
    double sum = 0.0;
    for (int t = 0; t < n_weights; ++t) {
        auto eng = make_engine(seed, 2 * std::uint64_t(t));
        std::uniform_real_distribution<double> uni(-1.0, 1.0);
        Vec w(D);
        for (int attempt = 0;; ++attempt) {
            for (int c = 0; c < D; ++c) w(c) = uni(eng);
            if (((data.X * w).array() != 0.0).all()) break;
            if (attempt >= 100)
                throw numerical_error("mean_diameter: cannot draw w off all hyperplanes");
        }
        const auto diam =
            cell_diameter(w, data, 10 * D, stream_seed(seed, 2 * std::uint64_t(t) + 1));
        if (diam) {
            sum += *diam;
            ++out.closed_cells;
        } else {
            ++out.open_cells;
        }
    }
    if (out.closed_cells > 0) out.mean = sum / out.closed_cells;
    return out;
}

BigInt cell_count(long N, int dim) {
    if (N < 0 || dim < 1) throw config_error("cell_count: need N >= 0, dim >= 1");
    BigInt total = 0, binom = 1;  // binom = C(N, 0)
    for (long i = 0; i <= std::min<long>(dim, N); ++i) {
        if (i > 0) binom = binom * (N - i + 1) / i;  // exact: product of i consecutive over i!
        total += binom;
    }
    return total;
}

}  // namespace landscape
