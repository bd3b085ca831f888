#include "mmrclust/projection.hpp"

#include "mmrclust/error.hpp"
#include "mmrclust/io.hpp"

#include <algorithm>
#include <cmath>

namespace mmrclust {

namespace {

constexpr double kPowerTolerance = 1e-10;
constexpr std::size_t kPowerMaxIter = 1000;

using Vector = std::vector<double>;

double dot(const Vector& a, const Vector& b)
{
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        s += a[i] * b[i];
    }
    return s;
}

Vector multiply(const Matrix& m, const Vector& v)
{
    Vector out(m.rows(), 0.0);
    for (std::size_t i = 0; i < m.rows(); ++i) {
        const auto row = m.row(i);
        for (std::size_t j = 0; j < v.size(); ++j) {
            out[i] += row[j] * v[j];
        }
    }
    return out;
}

void orthogonalize(Vector& v, const std::vector<Vector>& basis)
{
    for (const auto& b : basis) {
        const double proj = dot(v, b);
        for (std::size_t i = 0; i < v.size(); ++i) {
            v[i] -= proj * b[i];
        }
    }
}

/// false if v has (numerically) vanished
bool normalize(Vector& v, double scale)
{
    const double norm = std::sqrt(dot(v, v));
    if (!(norm > 1e-300) || norm <= 1e-14 * scale) {
        return false;
    }
    for (auto& x : v) {
        x /= norm;
    }
    return true;
}

void canonical_sign(Vector& v)
{
    std::size_t big = 0;
    for (std::size_t i = 1; i < v.size(); ++i) {
        if (std::abs(v[i]) > std::abs(v[big])) {
            big = i;
        }
    }
    if (v[big] < 0.0) {
        for (auto& x : v) {
            x = -x;
        }
    }
}

/// Leading eigenpair of the symmetric PSD matrix cov restricted to the
/// complement of `found`.
std::pair<Vector, double> dominant_direction(const Matrix& cov, const std::vector<Vector>& found, double scale)
{
    const std::size_t d = cov.rows();
    for (std::size_t start = 0; start < d; ++start) {
        Vector v(d, 0.0);
        v[start] = 1.0;
        orthogonalize(v, found);
        if (!normalize(v, 1.0)) {
            continue;
        }
        Vector w = multiply(cov, v);
        orthogonalize(w, found);
        if (!normalize(w, scale)) {
            continue;  // start vector lies in the null space
        }
        for (std::size_t it = 0; it < kPowerMaxIter; ++it) {
            Vector next = multiply(cov, w);
            orthogonalize(next, found);
            if (!normalize(next, scale)) {
                break;
            }
            double delta = 0.0;
            for (std::size_t i = 0; i < d; ++i) {
                delta = std::max(delta, std::abs(next[i] - w[i]));
            }
            w = std::move(next);
            if (delta < kPowerTolerance) {
                break;
            }
        }
        const double eigenvalue = dot(w, multiply(cov, w));
        return {w, std::max(eigenvalue, 0.0)};
    }
    // remaining spectrum is zero: any unit vector orthogonal to `found`
    for (std::size_t start = 0; start < d; ++start) {
        Vector v(d, 0.0);
        v[start] = 1.0;
        orthogonalize(v, found);
        if (normalize(v, 1.0)) {
            orthogonalize(v, found);
            normalize(v, 1.0);
            return {v, 0.0};
        }
    }
    return {Vector(d, 0.0), 0.0};
}

}  // namespace

Projection2D pca_2d(const DataMatrix& matrix)
{
    const Matrix& x = matrix.cells;
    const std::size_t n = x.rows();
    const std::size_t d = x.cols();
    if (n < 2) {
        throw Error(ErrorCode::TooFewRows, "projection needs at least two rows");
    }
    if (d < 2) {
        throw Error(ErrorCode::DimensionMismatch, "projection needs at least two columns");
    }
    require_finite(x, "pca_2d");

    Matrix centered = x;
    for (std::size_t j = 0; j < d; ++j) {
        double mean = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            mean += x(i, j);
        }
        mean /= static_cast<double>(n);
        for (std::size_t i = 0; i < n; ++i) {
            centered(i, j) -= mean;
        }
    }
    Matrix cov(d, d);
    for (std::size_t a = 0; a < d; ++a) {
        for (std::size_t b = a; b < d; ++b) {
            double s = 0.0;
            for (std::size_t i = 0; i < n; ++i) {
                s += centered(i, a) * centered(i, b);
            }
            cov(a, b) = cov(b, a) = s / static_cast<double>(n);
        }
    }
    double trace = 0.0;
    for (std::size_t j = 0; j < d; ++j) {
        trace += cov(j, j);
    }

    std::vector<Vector> found;
    double captured = 0.0;
    for (int c = 0; c < 2; ++c) {
        auto [direction, eigenvalue] = dominant_direction(cov, found, std::max(trace, 1e-300));
        canonical_sign(direction);
        captured += eigenvalue;
        found.push_back(std::move(direction));
    }

    Projection2D out;
    out.labels = matrix.labels;
    out.components = Matrix(2, d);
    for (std::size_t c = 0; c < 2; ++c) {
        std::copy(found[c].begin(), found[c].end(), out.components.row(c).begin());
    }
    out.coords = Matrix(n, 2);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t c = 0; c < 2; ++c) {
            double s = 0.0;
            for (std::size_t j = 0; j < d; ++j) {
                s += centered(i, j) * found[c][j];
            }
            out.coords(i, c) = s;
        }
    }
    out.explained_variance_fraction = trace > 0.0 ? std::clamp(captured / trace, 0.0, 1.0) : 1.0;
    return out;
}

std::string projection_to_csv(const Projection2D& projection, const std::vector<std::size_t>& clusters)
{
    if (clusters.size() != projection.labels.size()) {
        throw Error(ErrorCode::DimensionMismatch, "one cluster label per projected row required");
    }
    std::string out = "country,x,y,cluster\n";
    for (std::size_t i = 0; i < clusters.size(); ++i) {
        out += projection.labels[i] + ',' + format_double(projection.coords(i, 0)) + ',' +
               format_double(projection.coords(i, 1)) + ',' + std::to_string(clusters[i]) + '\n';
    }
    return out;
}

}  // namespace mmrclust
