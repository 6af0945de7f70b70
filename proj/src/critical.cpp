#include "landscape/critical.hpp"

#include <Eigen/SVD>
#include <limits>

namespace landscape {

PseudoInverse pseudoinverse(const Mat& m) {
    if (!m.allFinite()) throw numerical_error("pseudoinverse: non-finite entries");
    Eigen::BDCSVD<Mat> svd(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
    if (svd.info() != Eigen::Success) throw numerical_error("pseudoinverse: SVD did not converge");
    const Vec& sigma = svd.singularValues();
    const double sigma_max = sigma.size() > 0 ? sigma(0) : 0.0;
    const double tol = std::max(m.rows(), m.cols()) *
                       std::numeric_limits<double>::epsilon() * sigma_max;
    PseudoInverse out;
    Vec inv = Vec::Zero(sigma.size());
    for (int i = 0; i < sigma.size(); ++i) {
        if (sigma(i) > tol) {
            inv(i) = 1.0 / sigma(i);
            ++out.rank;
        }
    }
    out.pinv = svd.matrixV() * inv.asDiagonal() * svd.matrixU().transpose();
    return out;
}

CriticalSystem assemble_system(const ActivationPattern& pattern, const Dataset& data) {
    if (pattern.N() != data.N()) throw dimension_error("assemble_system: sample count mismatch");
    CriticalSystem s;
    s.K = pattern.K();
    s.D = data.D();
    s.y = data.y;
    s.A = Mat::Zero(data.N(), s.K * s.D);
    for (int j = 0; j < s.K; ++j)
        for (int i = 0; i < data.N(); ++i)
            if (pattern.I(i, j) != 0) s.A.block(i, j * s.D, 1, s.D) = data.X.row(i);
    return s;
}

CriticalSolution solve_critical(const CriticalSystem& system) {
    PseudoInverse p = pseudoinverse(system.A);
    CriticalSolution sol;
    sol.R0 = p.pinv * system.y;
    sol.Apinv = std::move(p.pinv);
    sol.rank = p.rank;
    sol.kind = sol.rank == system.K * system.D ? SolutionKind::Unique : SolutionKind::Continuous;
    return sol;
}

double loss_at_critical(const CriticalSystem& system, const CriticalSolution& solution) {
    if (solution.R0.size() != system.A.cols())
        throw dimension_error("loss_at_critical: solution/system mismatch");
    return (system.A * solution.R0 - system.y).squaredNorm() / double(system.A.rows());
}

Vec apply_projector(const CriticalSystem& system, const CriticalSolution& solution, const Vec& v) {
    if (v.size() != system.A.cols()) throw dimension_error("apply_projector: size mismatch");
    return v - solution.Apinv * (system.A * v);
}

Mat materialize_projector(const CriticalSystem& system, const CriticalSolution& solution) {
    const int kd = int(system.A.cols());
    return Mat::Identity(kd, kd) - solution.Apinv * system.A;
}

}  // namespace landscape
