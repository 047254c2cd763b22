#ifndef HYPERSTAR_LINALG_HPP
#define HYPERSTAR_LINALG_HPP

#include <hyperstar/error.hpp>

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace hyperstar {

/// Dense row-major matrix of doubles.
class DenseMatrix {
public:
    DenseMatrix() = default;
    DenseMatrix(std::size_t rows, std::size_t cols, double fill = 0.0)
        : rows_(rows), cols_(cols), data_(rows * cols, fill) {}
    DenseMatrix(std::size_t rows, std::size_t cols, std::vector<double> data)
        : rows_(rows), cols_(cols), data_(std::move(data)) {
        if (data_.size() != rows_ * cols_) throw invalid_input("matrix data has the wrong size");
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    double& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    double operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }
    std::span<const double> row(std::size_t i) const { return {data_.data() + i * cols_, cols_}; }
    std::span<const double> data() const { return data_; }

    friend bool operator==(const DenseMatrix&, const DenseMatrix&) = default;

private:
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<double> data_;
};

inline std::vector<double> multiply(const DenseMatrix& a, std::span<const double> x) {
    if (x.size() != a.cols())
        throw invalid_input("vector of size " + std::to_string(x.size()) + " does not match matrix with " +
                            std::to_string(a.cols()) + " columns");
    std::vector<double> y(a.rows(), 0.0);
    for (std::size_t i = 0; i < a.rows(); ++i) {
        double acc = 0.0;
        auto r = a.row(i);
        for (std::size_t j = 0; j < r.size(); ++j) acc += r[j] * x[j];
        y[i] = acc;
    }
    return y;
}

inline double frobenius_norm(const DenseMatrix& a) {
    double acc = 0.0;
    for (double v : a.data()) acc += v * v;
    return std::sqrt(acc);
}

/// max |a_ij - a_ji|.
inline double asymmetry(const DenseMatrix& a) {
    double worst = 0.0;
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = i + 1; j < a.cols(); ++j) worst = std::max(worst, std::fabs(a(i, j) - a(j, i)));
    return worst;
}

struct JacobiOptions {
    double relative_threshold = 1e-12;  // stop when off-diagonal Frobenius norm <= this * ||A||_F
    int max_sweeps = 100;
    std::size_t max_dimension = 4096;
};

/// Full spectrum of a symmetric matrix, ascending, by cyclic Jacobi rotations.
/// Converged when the off-diagonal Frobenius norm falls to
/// relative_threshold * ||A||_F; throws numeric_error after max_sweeps.
inline std::vector<double> symmetric_eigenvalues(const DenseMatrix& input, const JacobiOptions& options = {}) {
    const std::size_t n = input.rows();
    if (input.cols() != n) throw invalid_input("eigenvalues need a square matrix");
    if (n > options.max_dimension)
        throw capacity_error("matrix dimension " + std::to_string(n) + " exceeds the cap of " +
                             std::to_string(options.max_dimension));
    const double norm = frobenius_norm(input);
    if (asymmetry(input) > 1e-10 * std::max(1.0, norm))
        throw invalid_input("matrix is not symmetric");

    DenseMatrix a = input;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) a(i, j) = a(j, i) = 0.5 * (input(i, j) + input(j, i));

    auto off_norm = [&] {
        double acc = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j) acc += 2.0 * a(i, j) * a(i, j);
        return std::sqrt(acc);
    };
    const double target = options.relative_threshold * norm;

    int sweep = 0;
    for (; off_norm() > target; ++sweep) {
        if (sweep >= options.max_sweeps)
            throw numeric_error("Jacobi eigensolver did not converge in " + std::to_string(options.max_sweeps) +
                                " sweeps");
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const double apq = a(p, q);
                if (apq == 0.0) continue;
                const double app = a(p, p), aqq = a(q, q);
                const double theta = (aqq - app) / (2.0 * apq);
                const double t = (theta >= 0 ? 1.0 : -1.0) / (std::fabs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                for (std::size_t r = 0; r < n; ++r) {
                    if (r == p || r == q) continue;
                    const double arp = a(r, p), arq = a(r, q);
                    a(r, p) = a(p, r) = c * arp - s * arq;
                    a(r, q) = a(q, r) = s * arp + c * arq;
                }
                a(p, p) = app - t * apq;
                a(q, q) = aqq + t * apq;
                a(p, q) = a(q, p) = 0.0;
            }
        }
    }

    std::vector<double> eig(n);
    for (std::size_t i = 0; i < n; ++i) eig[i] = a(i, i);
    std::sort(eig.begin(), eig.end());
    return eig;
}

} // namespace hyperstar

#endif // HYPERSTAR_LINALG_HPP
