#include "landscape/gauss1d.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "landscape/critical.hpp"
#include "landscape/rng.hpp"

namespace landscape {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kMassFloor = 1e-300;  // below this a region is empty for a class

void validate_weights(const Weights1D& w) {
    if (w.h.size() != w.normals.size() || w.K() < 1)
        throw config_error("weights: need matching h and normals, K >= 1");
    for (int k = 0; k < w.K(); ++k)
        if (w.normals(k) != 1 && w.normals(k) != -1)
            throw config_error("weights: normals must be +1/-1");
    for (int k = 1; k < w.K(); ++k)
        if (!(w.h(k) > w.h(k - 1)))
            throw config_error("weights: positions must be strictly ascending");
}

// Stable moments of one class over (a, b): mass P and unnormalized first
// moment m1 = mu P + phi(a - mu) - phi(b - mu).
struct ClassMoments {
    double P, m1;
    bool empty;
};

ClassMoments class_moments(double a, double b, double mu) {
    const double pa = std::isinf(a) ? 0.0 : normal_pdf(a - mu);
    const double pb = std::isinf(b) ? 0.0 : normal_pdf(b - mu);
    const double ca = std::isinf(a) ? (a < 0 ? 0.0 : 1.0) : normal_cdf(a - mu);
    const double cb = std::isinf(b) ? (b < 0 ? 0.0 : 1.0) : normal_cdf(b - mu);
    ClassMoments m;
    m.P = cb - ca;
    m.m1 = mu * m.P + pa - pb;
    m.empty = m.P < kMassFloor;
    return m;
}

double pow_int(double base, int n) {
    double out = 1.0, b = base;
    for (int e = n; e > 0; e >>= 1) {
        if (e & 1) out *= b;
        b *= b;
    }
    return out;
}

// Gaps of every constrained weight at its optimum; dead weights contribute
// nothing (their loss term is identically zero over the cell).
std::vector<double> constrained_gaps(const Weights1D& w, const Positions1D& pos,
                                     const ClassModel1D& model) {
    std::vector<double> gaps;
    for (int k = 0; k < w.K(); ++k)
        if (!pos.unconstrained[std::size_t(k)])
            gaps.push_back(gap_probability(w.h(k), pos.h_star(k), model));
    return gaps;
}

Scan1DPoint evaluate_point(const Weights1D& w, int moved, int N, const ClassModel1D& model) {
    const RegionTable regions = region_partition(w);
    const MomentTable moments = moment_table(regions, model);
    const System1D sys = assemble_1d_system(regions, moments);
    const Positions1D pos = solve_optimal_positions(sys.F, sys.f);

    Scan1DPoint pt;
    pt.h_star = pos.h_star;
    const auto gaps = constrained_gaps(w, pos, model);
    pt.pg_max = gaps.empty() ? 0.0 : *std::max_element(gaps.begin(), gaps.end());
    pt.pg_union = gap_union_bound(gaps);
    pt.pt = existence_probability(gaps, N);
    if (moved >= 0) {
        pt.pg_moved = pos.unconstrained[std::size_t(moved)]
                          ? 0.0
                          : gap_probability(w.h(moved), pos.h_star(moved), model);
        pt.pt_moved = pow_int(1.0 - pt.pg_moved, N);
    } else {
        pt.pg_moved = pt.pg_max;
        pt.pt_moved = pt.pt;
    }
    return pt;
}

}  // namespace

double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }

double normal_pdf(double x) {
    static const double inv_sqrt_2pi = 1.0 / std::sqrt(2.0 * std::acos(-1.0));
    return inv_sqrt_2pi * std::exp(-0.5 * x * x);
}

RegionTable region_partition(const Weights1D& weights) {
    validate_weights(weights);
    const int K = weights.K();
    RegionTable tab;
    tab.lo.resize(K + 1);
    tab.hi.resize(K + 1);
    tab.I.resize(K + 1, K);
    for (int j = 0; j <= K; ++j) {
        tab.lo(j) = j == 0 ? -kInf : weights.h(j - 1);
        tab.hi(j) = j == K ? kInf : weights.h(j);
        for (int k = 0; k < K; ++k)
            tab.I(j, k) = weights.normals(k) > 0 ? (j > k ? 1 : 0) : (j <= k ? 1 : 0);
    }
    return tab;
}

RegionMoments region_moments(double a, double b, const ClassModel1D& model) {
    if (!(a < b)) throw config_error("region_moments: need a < b");
    const ClassMoments p = class_moments(a, b, model.x_plus);
    const ClassMoments m = class_moments(a, b, model.x_minus);
    RegionMoments out;
    out.P_plus = p.P;
    out.P_minus = m.P;
    out.m1_plus = p.m1;
    out.m1_minus = m.m1;
    out.empty_plus = p.empty;
    out.empty_minus = m.empty;
    out.xbar_plus = p.empty ? 0.0 : p.m1 / p.P;
    out.xbar_minus = m.empty ? 0.0 : m.m1 / m.P;
    return out;
}

MomentTable moment_table(const RegionTable& regions, const ClassModel1D& model) {
    MomentTable tab;
    tab.rows.reserve(std::size_t(regions.regions()));
    for (int j = 0; j < regions.regions(); ++j)
        tab.rows.push_back(region_moments(regions.lo(j), regions.hi(j), model));
    return tab;
}

System1D assemble_1d_system(const RegionTable& regions, const MomentTable& moments) {
    const int K = regions.K(), J = regions.regions();
    if (int(moments.rows.size()) != J) throw dimension_error("assemble_1d_system: table mismatch");
    System1D sys;
    sys.F = Mat::Zero(K, K);
    sys.f = Vec::Zero(K);
    for (int j = 0; j < J; ++j) {
        const RegionMoments& m = moments.rows[std::size_t(j)];
        const double mass = m.P_plus + m.P_minus;
        const double m1 = m.m1_plus + m.m1_minus;
        const double ybar = m.P_plus - m.P_minus;
        int count = 0;
        for (int k = 0; k < K; ++k) count += regions.I(j, k);
        for (int l = 0; l < K; ++l) {
            if (!regions.I(j, l)) continue;
            sys.f(l) += count * m1 - ybar;
            for (int k = 0; k < K; ++k)
                if (regions.I(j, k)) sys.F(l, k) += mass;
        }
    }
    return sys;
}

Positions1D solve_optimal_positions(const Mat& F, const Vec& f) {
    if (F.rows() != F.cols() || F.rows() != f.size())
        throw dimension_error("solve_optimal_positions: shape mismatch");
    Positions1D out;
    out.h_star = pseudoinverse(F).pinv * f;
    out.unconstrained.resize(std::size_t(F.rows()));
    const double floor = 1e-12 * std::max(1.0, F.diagonal().maxCoeff());
    for (int k = 0; k < F.rows(); ++k) out.unconstrained[std::size_t(k)] = F(k, k) <= floor;
    return out;
}

std::pair<double, double> two_weight_closed_form(double x_w1, double x_w2,
                                                 const ClassModel1D& model) {
    if (!(x_w2 < x_w1)) throw config_error("two_weight_closed_form: need x_w2 < x_w1");
    auto solve_region = [&](double a, double b, double x_w) {
        const RegionMoments m = region_moments(a, b, model);
        const double mass = m.P_plus + m.P_minus;
        if (mass < kMassFloor) return x_w;  // dead region: position pinned, empty gap
        return (m.m1_plus + m.m1_minus - m.P_plus + m.P_minus) / mass;
    };
    return {solve_region(x_w1, kInf, x_w1), solve_region(-kInf, x_w2, x_w2)};
}

double gap_probability(double x_w, double x_w_star, const ClassModel1D& model) {
    return 0.5 * std::abs(normal_cdf(x_w_star - model.x_plus) - normal_cdf(x_w - model.x_plus)) +
           0.5 * std::abs(normal_cdf(x_w_star - model.x_minus) - normal_cdf(x_w - model.x_minus));
}

double existence_probability(const std::vector<double>& gap_probs, int N) {
    double worst = 0.0;
    for (double g : gap_probs) {
        if (g < 0.0 || g > 1.0) throw config_error("existence_probability: gap outside [0,1]");
        worst = std::max(worst, g);
    }
    return pow_int(1.0 - worst, N);
}

double gap_union_bound(const std::vector<double>& gap_probs) {
    const double sum = std::accumulate(gap_probs.begin(), gap_probs.end(), 0.0);
    return std::min(1.0, sum);
}

std::vector<Scan1DPoint> sweep_scan(const Weights1D& base, int moved_index, const Vec& grid,
                                    int N, const ClassModel1D& model) {
    validate_weights(base);
    if (moved_index < 0 || moved_index >= base.K()) throw config_error("sweep_scan: bad index");
    std::vector<Scan1DPoint> out;
    out.reserve(std::size_t(grid.size()));
    for (int g = 0; g < grid.size(); ++g) {
        // Reposition, then re-sort positions with their normals, tracking
        // where the moved weight lands.
        std::vector<int> order(std::size_t(base.K()));
        std::iota(order.begin(), order.end(), 0);
        Vec h = base.h;
        h(moved_index) = grid(g);
        std::sort(order.begin(), order.end(), [&](int a, int b) { return h(a) < h(b); });
        Weights1D w;
        w.h.resize(base.K());
        w.normals.resize(base.K());
        int moved_now = -1;
        for (int k = 0; k < base.K(); ++k) {
            w.h(k) = h(order[std::size_t(k)]);
            w.normals(k) = base.normals(order[std::size_t(k)]);
            if (order[std::size_t(k)] == moved_index) moved_now = k;
        }
        Scan1DPoint pt = evaluate_point(w, moved_now, N, model);
        pt.coord = grid(g);
        out.push_back(std::move(pt));
    }
    return out;
}

std::vector<Scan1DPoint> shift_scan(const Weights1D& base, const Vec& deltas, int N,
                                    const ClassModel1D& model) {
    validate_weights(base);
    std::vector<Scan1DPoint> out;
    out.reserve(std::size_t(deltas.size()));
    for (int g = 0; g < deltas.size(); ++g) {
        Weights1D w = base;
        w.h.array() += deltas(g);
        Scan1DPoint pt = evaluate_point(w, -1, N, model);
        pt.coord = deltas(g);
        out.push_back(std::move(pt));
    }
    return out;
}

std::vector<Scan1DPoint> product2_scan(const Vec& grid_w1, const Vec& grid_w2, int N,
                                       const ClassModel1D& model) {
    std::vector<Scan1DPoint> out;
    out.reserve(std::size_t(grid_w1.size() * grid_w2.size()));
    for (int i = 0; i < grid_w1.size(); ++i)
        for (int j = 0; j < grid_w2.size(); ++j) {
            const double x1 = grid_w1(i), x2 = grid_w2(j);
            const auto [h1, h2] = two_weight_closed_form(x1, x2, model);
            const double g1 = gap_probability(x1, h1, model);
            const double g2 = gap_probability(x2, h2, model);
            Scan1DPoint pt;
            pt.coord = x1;
            pt.coord2 = x2;
            pt.h_star.resize(2);
            pt.h_star << h2, h1;  // ascending-position order
            pt.pg_moved = g1;
            pt.pt_moved = pow_int(1.0 - g1, N);
            pt.pg_max = std::max(g1, g2);
            pt.pg_union = gap_union_bound({g1, g2});
            pt.pt = pow_int(1.0 - g1, N) * pow_int(1.0 - g2, N);  // product of marginals
            out.push_back(std::move(pt));
        }
    return out;
}

Dataset1D generate_1d_dataset(int N, std::mt19937_64& eng, const ClassModel1D& model) {
    if (N < 2 || N % 2 != 0) throw config_error("generate_1d_dataset: N must be even, >= 2");
    std::normal_distribution<double> gauss(0.0, 1.0);
    Dataset1D ds;
    ds.x.resize(N);
    ds.y.resize(N);
    for (int i = 0; i < N / 2; ++i) {
        ds.x(i) = model.x_plus + gauss(eng);
        ds.y(i) = 1.0;
    }
    for (int i = N / 2; i < N; ++i) {
        ds.x(i) = model.x_minus + gauss(eng);
        ds.y(i) = -1.0;
    }
    return ds;
}

int region_index(const Weights1D& weights, double x) {
    int j = 0;
    while (j < weights.K() && x > weights.h(j)) ++j;
    return j;
}

System1D assemble_1d_empirical(const Weights1D& weights, const Dataset1D& data) {
    validate_weights(weights);
    const RegionTable regions = region_partition(weights);
    const int K = weights.K();
    Vec count_n = Vec::Zero(K + 1), sum_x = Vec::Zero(K + 1), sum_y = Vec::Zero(K + 1);
    for (int i = 0; i < data.N(); ++i) {
        const int j = region_index(weights, data.x(i));
        count_n(j) += 1.0;
        sum_x(j) += data.x(i);
        sum_y(j) += data.y(i);
    }
    System1D sys;
    sys.F = Mat::Zero(K, K);
    sys.f = Vec::Zero(K);
    for (int j = 0; j <= K; ++j) {
        int count = 0;
        for (int k = 0; k < K; ++k) count += regions.I(j, k);
        for (int l = 0; l < K; ++l) {
            if (!regions.I(j, l)) continue;
            sys.f(l) += count * sum_x(j) - sum_y(j);
            for (int k = 0; k < K; ++k)
                if (regions.I(j, k)) sys.F(l, k) += count_n(j);
        }
    }
    return sys;
}

double empirical_loss_1d(const Weights1D& weights, const Dataset1D& data) {
    validate_weights(weights);
    double total = 0.0;
    for (int i = 0; i < data.N(); ++i) {
        double pred = 0.0;
        for (int k = 0; k < weights.K(); ++k) {
            const double pre = weights.normals(k) * (data.x(i) - weights.h(k));
            if (pre > 0.0) pred += weights.normals(k) * pre;
        }
        const double r = pred - data.y(i);
        total += r * r;
    }
    return total / data.N();
}

bool empirical_genuine(const Weights1D& weights, const Dataset1D& data) {
    const System1D sys = assemble_1d_empirical(weights, data);
    const Positions1D pos = solve_optimal_positions(sys.F, sys.f);
    for (int k = 0; k < weights.K(); ++k) {
        if (pos.unconstrained[std::size_t(k)]) continue;  // dead weight: flat term
        const double a = std::min(weights.h(k), pos.h_star(k));
        const double b = std::max(weights.h(k), pos.h_star(k));
        for (int i = 0; i < data.N(); ++i)
            if (data.x(i) > a && data.x(i) < b) return false;
    }
    return true;
}

double mc_existence_frequency(const Weights1D& weights, int N, int M, std::uint64_t seed,
                              const ClassModel1D& model) {
    validate_weights(weights);
    if (M < 1) throw config_error("mc_existence_frequency: M must be >= 1");
    int hits = 0;
    for (int m = 0; m < M; ++m) {
        auto eng = make_engine(seed, std::uint64_t(m));
        const Dataset1D ds = generate_1d_dataset(N, eng, model);
        if (empirical_genuine(weights, ds)) ++hits;
    }
    return double(hits) / double(M);
}

}  // namespace landscape
