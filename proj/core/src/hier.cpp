#include "mmrclust/hier.hpp"

#include "mmrclust/error.hpp"
#include "mmrclust/io.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace mmrclust::hier {

std::string_view to_string(Linkage linkage) noexcept
{
    switch (linkage) {
    case Linkage::Single: return "single";
    case Linkage::Complete: return "complete";
    case Linkage::Average: return "average";
    case Linkage::Ward: return "ward";
    }
    return "unknown";
}

Linkage parse_linkage(std::string_view name)
{
    for (auto l : {Linkage::Single, Linkage::Complete, Linkage::Average, Linkage::Ward}) {
        if (name == to_string(l)) {
            return l;
        }
    }
    throw Error(ErrorCode::InvalidArgument, "unknown linkage '" + std::string(name) + "'");
}

namespace {

/// Distance from cluster k to the union of i and j, given the three
/// pairwise distances and cluster sizes.
double lance_williams(Linkage linkage, double d_ki, double d_kj, double d_ij, double n_i, double n_j, double n_k)
{
    switch (linkage) {
    case Linkage::Single: return std::min(d_ki, d_kj);
    case Linkage::Complete: return std::max(d_ki, d_kj);
    case Linkage::Average: return (n_i * d_ki + n_j * d_kj) / (n_i + n_j);
    case Linkage::Ward:
        return ((n_i + n_k) * d_ki + (n_j + n_k) * d_kj - n_k * d_ij) / (n_i + n_j + n_k);
    }
    return 0.0;
}

}  // namespace

Dendrogram agglomerate(const Matrix& matrix, Linkage linkage)
{
    const std::size_t n = matrix.rows();
    if (n < 2) {
        throw Error(ErrorCode::TooFewRows, "agglomeration needs at least two rows");
    }
    require_finite(matrix, "hier::agglomerate");

    // slot s holds active cluster node_id[s]; dist is indexed by slot
    const bool squared = linkage == Linkage::Ward;
    Matrix dist(n, n);
    for (std::size_t a = 0; a < n; ++a) {
        for (std::size_t b = a + 1; b < n; ++b) {
            const double d2 = squared_distance(matrix.row(a), matrix.row(b));
            dist(a, b) = dist(b, a) = squared ? d2 : std::sqrt(d2);
        }
    }
    std::vector<std::size_t> node_id(n);
    std::iota(node_id.begin(), node_id.end(), 0);
    std::vector<double> size(n, 1.0);
    std::vector<bool> active(n, true);

    Dendrogram dendrogram;
    dendrogram.leaf_count = n;
    dendrogram.linkage = linkage;
    dendrogram.merges.reserve(n - 1);

    for (std::size_t step = 0; step + 1 < n; ++step) {
        std::size_t best_a = n;
        std::size_t best_b = n;
        double best = 0.0;
        auto key = [&](std::size_t a, std::size_t b) {
            return std::pair{std::min(node_id[a], node_id[b]), std::max(node_id[a], node_id[b])};
        };
        for (std::size_t a = 0; a < n; ++a) {
            if (!active[a]) {
                continue;
            }
            for (std::size_t b = a + 1; b < n; ++b) {
                if (!active[b]) {
                    continue;
                }
                const double d = dist(a, b);
                if (best_a == n || d < best || (d == best && key(a, b) < key(best_a, best_b))) {
                    best = d;
                    best_a = a;
                    best_b = b;
                }
            }
        }

        const double n_a = size[best_a];
        const double n_b = size[best_b];
        for (std::size_t c = 0; c < n; ++c) {
            if (!active[c] || c == best_a || c == best_b) {
                continue;
            }
            const double updated =
                lance_williams(linkage, dist(c, best_a), dist(c, best_b), best, n_a, n_b, size[c]);
            dist(c, best_a) = dist(best_a, c) = updated;
        }

        const auto [lo, hi] = key(best_a, best_b);
        const double reported = squared ? std::sqrt(std::max(best, 0.0)) : best;
        const auto merged = static_cast<std::size_t>(n_a + n_b);
        dendrogram.merges.push_back({lo, hi, reported, merged});

        // merged cluster lives on in slot best_a
        node_id[best_a] = n + step;
        size[best_a] = n_a + n_b;
        active[best_b] = false;
    }
    return dendrogram;
}

std::vector<std::size_t> cut(const Dendrogram& dendrogram, std::size_t k)
{
    const std::size_t n = dendrogram.leaf_count;
    if (k < 1 || k > n) {
        throw Error(ErrorCode::KOutOfRange, "k = " + std::to_string(k) + " outside [1, " + std::to_string(n) + "]");
    }
    if (dendrogram.merges.size() + 1 != n) {
        throw Error(ErrorCode::InvariantViolation, "dendrogram must hold n - 1 merges");
    }
    // union-find over all 2n-1 node ids
    std::vector<std::size_t> parent(2 * n - 1);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](std::size_t x) {
        while (parent[x] != x) {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        return x;
    };
    for (std::size_t j = 0; j < n - k; ++j) {
        const Merge& m = dendrogram.merges[j];
        parent[find(m.left)] = n + j;
        parent[find(m.right)] = n + j;
    }

    std::vector<std::size_t> labels(n);
    std::vector<std::size_t> root_label(2 * n - 1, n);
    std::size_t next = 0;
    for (std::size_t leaf = 0; leaf < n; ++leaf) {
        const std::size_t root = find(leaf);
        if (root_label[root] == n) {
            root_label[root] = next++;
        }
        labels[leaf] = root_label[root];
    }
    return labels;
}

std::string to_csv(const Dendrogram& dendrogram)
{
    std::string out = "left,right,distance,size\n";
    for (const auto& m : dendrogram.merges) {
        out += std::to_string(m.left) + ',' + std::to_string(m.right) + ',' + format_double(m.distance) + ',' +
               std::to_string(m.size) + '\n';
    }
    return out;
}

}  // namespace mmrclust::hier
