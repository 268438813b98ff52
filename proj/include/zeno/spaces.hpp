// spaces.hpp — Labeled composite Hilbert spaces and operator builders:
// tensor products, truncated Fock ladder, atomic transitions, embeddings.

#pragma once

#include <unsupported/Eigen/KroneckerProduct>

#include <numeric>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "zeno/numkernel.hpp"

namespace zeno::spaces {

using num::Index;
using num::Matrix;
using num::Vector;

// ------------------------------ Space layout ----------------------------------

// One basis ket of a composite space: (subsystem name, level) per factor.
struct BasisLabel {
    std::vector<std::pair<std::string, int>> factors;

    std::string str() const {
        std::ostringstream os;
        os << '|';
        for (std::size_t k = 0; k < factors.size(); ++k)
            os << (k ? " " : "") << factors[k].second;
        os << '>';
        return os.str();
    }
};

// Ordered list of subsystems; the first declared factor varies slowest.
struct SpaceSpec {
    std::vector<std::pair<std::string, int>> subsystems;  // (name, dimension)

    SpaceSpec() = default;
    explicit SpaceSpec(std::vector<std::pair<std::string, int>> subs)
        : subsystems(std::move(subs)) {
        for (std::size_t i = 0; i < subsystems.size(); ++i) {
            if (subsystems[i].second < 1)
                throw std::invalid_argument("SpaceSpec: dimensions must be >= 1");
            for (std::size_t j = i + 1; j < subsystems.size(); ++j)
                if (subsystems[i].first == subsystems[j].first)
                    throw std::invalid_argument("SpaceSpec: duplicate subsystem name '" +
                                                subsystems[i].first + "'");
        }
    }

    Index total_dim() const {
        Index d = 1;
        for (const auto& [name, dim] : subsystems) d *= dim;
        return d;
    }

    std::size_t subsystem_index(const std::string& name) const {
        for (std::size_t k = 0; k < subsystems.size(); ++k)
            if (subsystems[k].first == name) return k;
        throw std::invalid_argument("SpaceSpec: unknown subsystem '" + name + "'");
    }

    // Global index -> per-factor levels (first factor slowest)
    std::vector<int> unpack(Index idx) const {
        std::vector<int> levels(subsystems.size());
        for (std::size_t k = subsystems.size(); k-- > 0;) {
            levels[k] = static_cast<int>(idx % subsystems[k].second);
            idx /= subsystems[k].second;
        }
        return levels;
    }

    Index pack(const std::vector<int>& levels) const {
        if (levels.size() != subsystems.size())
            throw std::invalid_argument("SpaceSpec::pack: wrong number of levels");
        Index idx = 0;
        for (std::size_t k = 0; k < subsystems.size(); ++k) {
            if (levels[k] < 0 || levels[k] >= subsystems[k].second)
                throw std::out_of_range("SpaceSpec::pack: level out of range");
            idx = idx * subsystems[k].second + levels[k];
        }
        return idx;
    }

    BasisLabel label(Index idx) const {
        BasisLabel lbl;
        const auto levels = unpack(idx);
        for (std::size_t k = 0; k < subsystems.size(); ++k)
            lbl.factors.emplace_back(subsystems[k].first, levels[k]);
        return lbl;
    }

    std::vector<std::string> basis_labels() const {
        std::vector<std::string> out;
        out.reserve(static_cast<std::size_t>(total_dim()));
        for (Index i = 0; i < total_dim(); ++i) out.push_back(label(i).str());
        return out;
    }
};

// ------------------------------ Builders ---------------------------------------

// Tensor product, lexicographic basis ordering with the first factor slowest
inline Matrix kron(const Matrix& A, const Matrix& B) {
    return Eigen::kroneckerProduct(A, B);
}

// Ket |i> of a dim-dimensional factor
inline Vector basis_vector(Index dim, Index i) {
    if (i < 0 || i >= dim) throw std::out_of_range("basis_vector: index out of range");
    Vector v = Vector::Zero(dim);
    v(i) = 1.0;
    return v;
}

// Truncated lowering operator on the (n_max+1)-dimensional Fock space:
// b |n> = sqrt(n) |n-1>
inline Matrix annihilator(int n_max) {
    if (n_max < 1) throw std::invalid_argument("annihilator: n_max must be >= 1");
    Matrix b = Matrix::Zero(n_max + 1, n_max + 1);
    for (int n = 1; n <= n_max; ++n)
        b(n - 1, n) = std::sqrt(static_cast<double>(n));
    return b;
}

// |to><from| in a dim-dimensional space
inline Matrix transition(Index dim, Index to, Index from) {
    if (to < 0 || to >= dim || from < 0 || from >= dim)
        throw std::out_of_range("transition: index out of range");
    Matrix M = Matrix::Zero(dim, dim);
    M(to, from) = 1.0;
    return M;
}

// Symmetric coupling |a><b| + |b><a|
inline Matrix coupling(Index dim, Index a, Index b) {
    return transition(dim, a, b) + transition(dim, b, a);
}

// Lift a single-subsystem operator to the full space (identity elsewhere)
inline Matrix embed(const Matrix& local, const SpaceSpec& spec,
                    const std::string& subsystem) {
    const std::size_t target = spec.subsystem_index(subsystem);
    if (local.rows() != local.cols() ||
        local.rows() != spec.subsystems[target].second)
        throw std::invalid_argument("embed: operator does not match subsystem '" +
                                    subsystem + "'");
    Matrix out = Matrix::Identity(1, 1);
    for (std::size_t k = 0; k < spec.subsystems.size(); ++k) {
        if (k == target)
            out = kron(out, local);
        else
            out = kron(out, Matrix::Identity(spec.subsystems[k].second,
                                             spec.subsystems[k].second));
    }
    return out;
}

}  // namespace zeno::spaces
