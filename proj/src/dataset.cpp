#include "landscape/dataset.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <random>
#include <sstream>

#include "landscape/rng.hpp"

namespace landscape {

void Dataset::validate() const {
    if (N() < 1 || d < 1) throw dimension_error("dataset: need N >= 1 and d >= 1");
    if (D() != d + 1) throw dimension_error("dataset: X must have d+1 columns");
    if (y.size() != N()) throw dimension_error("dataset: label count mismatch");
    for (int i = 0; i < N(); ++i) {
        if (X(i, d) != 1.0) throw dimension_error("dataset: bias coordinate must equal 1");
        if (y(i) != 1.0 && y(i) != -1.0) throw dimension_error("dataset: labels must be +/-1");
    }
}

Dataset generate_gaussian_dataset(int d, int n_per_class, std::uint64_t seed) {
    if (d < 1) throw config_error("gaussian: d must be >= 1");
    if (n_per_class < 1) throw config_error("gaussian: n_per_class must be >= 1");
    const int n = 2 * n_per_class;
    Dataset out;
    out.d = d;
    out.X.resize(n, d + 1);
    out.y.resize(n);
    auto eng = make_engine(seed, 0);
    std::normal_distribution<double> normal(0.0, 1.0);
    for (int i = 0; i < n; ++i) {
        const bool positive = i < n_per_class;
        for (int k = 0; k < d; ++k) out.X(i, k) = normal(eng);
        out.X(i, 0) += positive ? 1.0 : -1.0;
        out.X(i, d) = 1.0;
        out.y(i) = positive ? 1.0 : -1.0;
    }
    out.validate();
    return out;
}

namespace {

std::uint32_t read_be32(const std::vector<std::uint8_t>& bytes, std::size_t offset) {
    return (std::uint32_t(bytes[offset]) << 24) | (std::uint32_t(bytes[offset + 1]) << 16) |
           (std::uint32_t(bytes[offset + 2]) << 8) | std::uint32_t(bytes[offset + 3]);
}

void write_be32(std::vector<std::uint8_t>& bytes, std::uint32_t v) {
    bytes.push_back(std::uint8_t(v >> 24));
    bytes.push_back(std::uint8_t(v >> 16));
    bytes.push_back(std::uint8_t(v >> 8));
    bytes.push_back(std::uint8_t(v));
}

std::vector<std::uint8_t> read_file_bytes(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw data_error("cannot open file: " + path);
    return std::vector<std::uint8_t>((std::istreambuf_iterator<char>(in)),
                                     std::istreambuf_iterator<char>());
}

}  // namespace

IdxTensor parse_idx(const std::vector<std::uint8_t>& bytes) {
    if (bytes.size() < 4) throw data_error("idx: truncated file (no magic)");
    if (bytes[0] != 0 || bytes[1] != 0) throw data_error("idx: bad magic prefix");
    if (bytes[2] != 0x08) throw data_error("idx: unsupported type code");
    const int ndims = bytes[3];
    if (bytes.size() < 4 + 4 * std::size_t(ndims)) throw data_error("idx: truncated dimension list");
    IdxTensor t;
    std::size_t total = 1;
    for (int k = 0; k < ndims; ++k) {
        const std::size_t dim = read_be32(bytes, 4 + 4 * std::size_t(k));
        t.shape.push_back(dim);
        total *= dim;
    }
    const std::size_t data_start = 4 + 4 * std::size_t(ndims);
    if (bytes.size() - data_start != total)
        throw data_error("idx: element count does not match byte length");
    t.data.assign(bytes.begin() + data_start, bytes.end());
    return t;
}

std::vector<std::uint8_t> encode_idx(const IdxTensor& tensor) {
    std::vector<std::uint8_t> bytes;
    bytes.push_back(0);
    bytes.push_back(0);
    bytes.push_back(0x08);
    bytes.push_back(std::uint8_t(tensor.shape.size()));
    std::size_t total = 1;
    for (std::size_t dim : tensor.shape) {
        write_be32(bytes, std::uint32_t(dim));
        total *= dim;
    }
    if (total != tensor.data.size()) throw data_error("idx: tensor data/shape mismatch");
    bytes.insert(bytes.end(), tensor.data.begin(), tensor.data.end());
    return bytes;
}

Dataset load_mnist_binary_subset(const std::string& image_file, const std::string& label_file,
                                 int class_a, int class_b, int per_class) {
    if (per_class < 1) throw data_error("mnist: per_class must be >= 1");
    const IdxTensor images = parse_idx(read_file_bytes(image_file));
    const IdxTensor labels = parse_idx(read_file_bytes(label_file));
    if (images.shape.size() != 3) throw data_error("mnist: image file must have 3 dimensions");
    if (labels.shape.size() != 1) throw data_error("mnist: label file must have 1 dimension");
    if (images.shape[0] != labels.shape[0])
        throw data_error("mnist: image/label count mismatch");
    const std::size_t n_all = images.shape[0];
    const int d = int(images.shape[1] * images.shape[2]);

    std::vector<std::size_t> idx_a, idx_b;
    for (std::size_t i = 0; i < n_all; ++i) {
        if (labels.data[i] == class_a && int(idx_a.size()) < per_class) idx_a.push_back(i);
        if (labels.data[i] == class_b && int(idx_b.size()) < per_class) idx_b.push_back(i);
    }
    if (int(idx_a.size()) < per_class || int(idx_b.size()) < per_class)
        throw data_error("mnist: insufficient samples of a requested class");

    Dataset out;
    out.d = d;
    out.X.resize(2 * per_class, d + 1);
    out.y.resize(2 * per_class);
    auto fill = [&](const std::vector<std::size_t>& idx, int row0, double label) {
        for (int r = 0; r < per_class; ++r) {
            const std::uint8_t* px = images.data.data() + idx[std::size_t(r)] * std::size_t(d);
            for (int k = 0; k < d; ++k) out.X(row0 + r, k) = double(px[k]) / 255.0;
            out.X(row0 + r, d) = 1.0;
            out.y(row0 + r) = label;
        }
    };
    fill(idx_a, 0, +1.0);
    fill(idx_b, per_class, -1.0);
    out.validate();
    return out;
}

Dataset load_cifar10_binary_subset(const std::vector<std::string>& batch_files, int class_a,
                                   int class_b, int per_class) {
    if (per_class < 1) throw data_error("cifar10: per_class must be >= 1");
    constexpr std::size_t kRecord = 3073;  // 1 label byte + 3*1024 plane-major channels
    constexpr int kPixels = 1024;
    std::vector<std::vector<double>> rows_a, rows_b;
    for (const std::string& path : batch_files) {
        const std::vector<std::uint8_t> bytes = read_file_bytes(path);
        if (bytes.size() % kRecord != 0)
            throw data_error("cifar10: file length not a multiple of 3073: " + path);
        for (std::size_t off = 0; off + kRecord <= bytes.size(); off += kRecord) {
            const int label = bytes[off];
            const bool want_a = label == class_a && int(rows_a.size()) < per_class;
            const bool want_b = label == class_b && int(rows_b.size()) < per_class;
            if (!want_a && !want_b) continue;
            std::vector<double> gray(kPixels);
            const std::uint8_t* r = bytes.data() + off + 1;
            const std::uint8_t* g = r + kPixels;
            const std::uint8_t* b = g + kPixels;
            for (int k = 0; k < kPixels; ++k)
                gray[std::size_t(k)] = (0.299 * r[k] + 0.587 * g[k] + 0.114 * b[k]) / 255.0;
            if (want_a) rows_a.push_back(std::move(gray));
            else rows_b.push_back(std::move(gray));
        }
    }
    if (int(rows_a.size()) < per_class || int(rows_b.size()) < per_class)
        throw data_error("cifar10: insufficient samples of a requested class");

    Dataset out;
    out.d = kPixels;
    out.X.resize(2 * per_class, kPixels + 1);
    out.y.resize(2 * per_class);
    for (int r = 0; r < per_class; ++r) {
        for (int k = 0; k < kPixels; ++k) {
            out.X(r, k) = rows_a[std::size_t(r)][std::size_t(k)];
            out.X(per_class + r, k) = rows_b[std::size_t(r)][std::size_t(k)];
        }
        out.X(r, kPixels) = 1.0;
        out.X(per_class + r, kPixels) = 1.0;
        out.y(r) = +1.0;
        out.y(per_class + r) = -1.0;
    }
    out.validate();
    return out;
}

void export_csv(const Dataset& data, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw data_error("cannot write file: " + path);
    char buf[32];
    for (int i = 0; i < data.N(); ++i) {
        std::string line;
        for (int k = 0; k < data.d; ++k) {
            std::snprintf(buf, sizeof buf, "%.17g", data.X(i, k));
            line += buf;
            line += ',';
        }
        std::snprintf(buf, sizeof buf, "%g", data.y(i));
        line += buf;
        out << line << '\n';
    }
}

Dataset import_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw data_error("cannot open file: " + path);
    std::vector<std::vector<double>> rows;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::vector<double> row;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) row.push_back(std::stod(cell));
        if (!rows.empty() && row.size() != rows.front().size())
            throw data_error("dataset csv: ragged rows");
        rows.push_back(std::move(row));
    }
    if (rows.empty() || rows.front().size() < 2) throw data_error("dataset csv: no usable rows");
    const int d = int(rows.front().size()) - 1;
    Dataset out;
    out.d = d;
    out.X.resize(int(rows.size()), d + 1);
    out.y.resize(int(rows.size()));
    for (std::size_t i = 0; i < rows.size(); ++i) {
        for (int k = 0; k < d; ++k) out.X(int(i), k) = rows[i][std::size_t(k)];
        out.X(int(i), d) = 1.0;
        out.y(int(i)) = rows[i].back();
    }
    out.validate();
    return out;
}

}  // namespace landscape
