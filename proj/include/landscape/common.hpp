#pragma once

#include <Eigen/Dense>
#include <stdexcept>
#include <string>

namespace landscape {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;
using IVec = Eigen::VectorXi;
using PatternMat = Eigen::Matrix<int, Eigen::Dynamic, Eigen::Dynamic>;

// Error taxonomy: each maps to a distinct process exit code in the CLI.
struct config_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct data_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct numerical_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct dimension_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace landscape
