#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "landscape/common.hpp"

namespace landscape {

// Canonical sample container. X holds one sample per row, bias-augmented:
// the last column is identically 1, so X is N x (d+1). Labels are +/-1.
struct Dataset {
    Mat X;
    Vec y;
    int d = 0;

    int N() const { return static_cast<int>(X.rows()); }
    int D() const { return static_cast<int>(X.cols()); }
    void validate() const;
};

// Two Gaussian classes with identity covariance, means (+1,0,...,0) and
// (-1,0,...,0), equal priors. Positive-class samples come first.
Dataset generate_gaussian_dataset(int d, int n_per_class, std::uint64_t seed);

// Raw IDX tensor (big-endian container used by the MNIST distribution).
struct IdxTensor {
    std::vector<std::size_t> shape;
    std::vector<std::uint8_t> data;
};

IdxTensor parse_idx(const std::vector<std::uint8_t>& bytes);
std::vector<std::uint8_t> encode_idx(const IdxTensor& tensor);

Dataset load_mnist_binary_subset(const std::string& image_file, const std::string& label_file,
                                 int class_a, int class_b, int per_class);

Dataset load_cifar10_binary_subset(const std::vector<std::string>& batch_files, int class_a,
                                   int class_b, int per_class);

// Debug round trip: one row per sample, d raw features then the label.
void export_csv(const Dataset& data, const std::string& path);
Dataset import_csv(const std::string& path);

}  // namespace landscape
