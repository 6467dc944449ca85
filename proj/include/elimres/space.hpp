#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <memory>
#include <numeric>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "elimres/error.hpp"

namespace elimres {

inline constexpr std::size_t kMaxVariables = 16;

enum class BlockKind { geometric, parameter };

struct VariableBlock {
    std::string name;
    std::vector<std::string> variables;
    BlockKind kind = BlockKind::geometric;
};

/// Ordered blocks of variables. Geometric block t with l_t + 1 variables is
/// the homogeneous coordinate ring of P^{l_t}; parameter blocks carry the
/// family parameters and are ignored by the multigrading.
class VariableSpace {
public:
    explicit VariableSpace(std::vector<VariableBlock> blocks) : blocks_(std::move(blocks)) {
        std::size_t offset = 0;
        for (std::size_t b = 0; b < blocks_.size(); ++b) {
            const auto& blk = blocks_[b];
            if (blk.variables.empty()) throw UsageError("block '" + blk.name + "' has no variables");
            if (blk.kind == BlockKind::geometric) {
                if (blk.variables.size() < 2)
                    throw UsageError("geometric block '" + blk.name + "' needs at least two variables");
                geometric_.push_back(b);
            }
            offsets_.push_back(offset);
            for (const auto& v : blk.variables) {
                if (index_of(v)) throw UsageError("duplicate variable '" + v + "'");
                names_.push_back(v);
                block_of_.push_back(b);
            }
            offset += blk.variables.size();
        }
        if (names_.size() > kMaxVariables)
            throw UsageError("at most " + std::to_string(kMaxVariables) + " variables are supported");
    }

    const std::vector<VariableBlock>& blocks() const noexcept { return blocks_; }
    std::size_t size() const noexcept { return names_.size(); }
    const std::string& name(std::size_t var) const { return names_.at(var); }
    const std::vector<std::string>& names() const noexcept { return names_; }

    std::optional<std::size_t> index_of(std::string_view v) const {
        for (std::size_t i = 0; i < names_.size(); ++i)
            if (names_[i] == v) return i;
        return std::nullopt;
    }

    std::size_t block_of(std::size_t var) const { return block_of_.at(var); }
    std::size_t block_offset(std::size_t block) const { return offsets_.at(block); }
    std::size_t block_size(std::size_t block) const { return blocks_.at(block).variables.size(); }

    /// Indices (into blocks()) of the geometric blocks, in declaration order.
    const std::vector<std::size_t>& geometric_blocks() const noexcept { return geometric_; }
    std::size_t num_geometric() const noexcept { return geometric_.size(); }

    /// Projective dimensions l_t of the geometric factors.
    std::vector<int> projective_dims() const {
        std::vector<int> l;
        for (auto b : geometric_) l.push_back(static_cast<int>(block_size(b)) - 1);
        return l;
    }

    bool is_parameter(std::size_t var) const {
        return blocks_[block_of_[var]].kind == BlockKind::parameter;
    }

    /// Position of var's block among the geometric blocks, or nullopt for parameters.
    std::optional<std::size_t> geometric_slot(std::size_t var) const {
        auto it = std::find(geometric_.begin(), geometric_.end(), block_of_[var]);
        if (it == geometric_.end()) return std::nullopt;
        return static_cast<std::size_t>(it - geometric_.begin());
    }

    std::vector<std::string> parameter_names() const {
        std::vector<std::string> out;
        for (std::size_t i = 0; i < names_.size(); ++i)
            if (is_parameter(i)) out.push_back(names_[i]);
        return out;
    }

    friend bool operator==(const VariableSpace& a, const VariableSpace& b) {
        if (a.blocks_.size() != b.blocks_.size()) return false;
        for (std::size_t i = 0; i < a.blocks_.size(); ++i)
            if (a.blocks_[i].variables != b.blocks_[i].variables || a.blocks_[i].kind != b.blocks_[i].kind)
                return false;
        return true;
    }

private:
    std::vector<VariableBlock> blocks_;
    std::vector<std::string> names_;
    std::vector<std::size_t> block_of_;
    std::vector<std::size_t> offsets_;
    std::vector<std::size_t> geometric_;
};

using SpacePtr = std::shared_ptr<const VariableSpace>;

inline bool same_space(const SpacePtr& a, const SpacePtr& b) {
    if (a == b) return true;
    if (!a || !b) return false;
    return *a == *b;
}

inline SpacePtr make_space(std::vector<VariableBlock> blocks) {
    return std::make_shared<const VariableSpace>(std::move(blocks));
}

/// Geometric blocks from name lists plus an optional single parameter block.
inline SpacePtr make_space(const std::vector<std::vector<std::string>>& geometric,
                           const std::vector<std::string>& parameters = {}) {
    std::vector<VariableBlock> blocks;
    for (std::size_t i = 0; i < geometric.size(); ++i)
        blocks.push_back({"x" + std::to_string(i + 1), geometric[i], BlockKind::geometric});
    if (!parameters.empty()) blocks.push_back({"params", parameters, BlockKind::parameter});
    return make_space(std::move(blocks));
}

/// One degree per geometric block.
struct MultiDegree {
    std::vector<int> d;

    MultiDegree() = default;
    explicit MultiDegree(std::vector<int> v) : d(std::move(v)) {}
    MultiDegree(std::initializer_list<int> v) : d(v) {}

    std::size_t size() const noexcept { return d.size(); }
    int operator[](std::size_t i) const { return d[i]; }
    int& operator[](std::size_t i) { return d[i]; }

    bool nonnegative() const {
        return std::all_of(d.begin(), d.end(), [](int x) { return x >= 0; });
    }

    MultiDegree& operator+=(const MultiDegree& o) {
        check(o);
        for (std::size_t i = 0; i < d.size(); ++i) d[i] += o.d[i];
        return *this;
    }
    MultiDegree& operator-=(const MultiDegree& o) {
        check(o);
        for (std::size_t i = 0; i < d.size(); ++i) d[i] -= o.d[i];
        return *this;
    }
    friend MultiDegree operator+(MultiDegree a, const MultiDegree& b) { return a += b; }
    friend MultiDegree operator-(MultiDegree a, const MultiDegree& b) { return a -= b; }
    friend MultiDegree operator*(int k, MultiDegree a) {
        for (auto& x : a.d) x *= k;
        return a;
    }
    friend bool operator==(const MultiDegree&, const MultiDegree&) = default;
    friend auto operator<=>(const MultiDegree&, const MultiDegree&) = default;

    std::string to_string() const {
        std::string s = "(";
        for (std::size_t i = 0; i < d.size(); ++i) s += (i ? "," : "") + std::to_string(d[i]);
        return s + ")";
    }

private:
    void check(const MultiDegree& o) const {
        if (o.d.size() != d.size()) throw UsageError("multidegree length mismatch");
    }
};

/// Exponent vector over all variables of a space. Fixed capacity keeps
/// monomials trivially copyable.
class Monomial {
public:
    Monomial() { e_.fill(0); }

    std::uint16_t operator[](std::size_t i) const { return e_[i]; }
    void set(std::size_t i, unsigned v) {
        total_ = total_ - e_[i] + v;
        e_[i] = static_cast<std::uint16_t>(v);
    }
    unsigned total_degree() const noexcept { return total_; }
    bool is_one() const noexcept { return total_ == 0; }

    Monomial& operator*=(const Monomial& o) {
        for (std::size_t i = 0; i < kMaxVariables; ++i) e_[i] = static_cast<std::uint16_t>(e_[i] + o.e_[i]);
        total_ += o.total_;
        return *this;
    }
    friend Monomial operator*(Monomial a, const Monomial& b) { return a *= b; }

    bool divides(const Monomial& o) const {
        for (std::size_t i = 0; i < kMaxVariables; ++i)
            if (e_[i] > o.e_[i]) return false;
        return true;
    }
    /// o / this; requires divides(o).
    Monomial quotient_of(const Monomial& o) const {
        Monomial q;
        for (std::size_t i = 0; i < kMaxVariables; ++i) q.e_[i] = static_cast<std::uint16_t>(o.e_[i] - e_[i]);
        q.total_ = o.total_ - total_;
        return q;
    }
    static Monomial gcd(const Monomial& a, const Monomial& b) {
        Monomial g;
        for (std::size_t i = 0; i < kMaxVariables; ++i) {
            g.e_[i] = std::min(a.e_[i], b.e_[i]);
            g.total_ += g.e_[i];
        }
        return g;
    }

    friend bool operator==(const Monomial& a, const Monomial& b) { return a.e_ == b.e_; }

    /// Graded-lexicographic comparison on the full exponent vector.
    friend bool grlex_less(const Monomial& a, const Monomial& b) {
        if (a.total_ != b.total_) return a.total_ < b.total_;
        return std::lexicographical_compare(a.e_.begin(), a.e_.end(), b.e_.begin(), b.e_.end());
    }

    std::size_t hash() const noexcept {
        std::size_t h = 1469598103934665603ull;
        for (auto x : e_) h = (h ^ x) * 1099511628211ull;
        return h;
    }

private:
    std::array<std::uint16_t, kMaxVariables> e_;
    unsigned total_ = 0;
};

struct MonomialHash {
    std::size_t operator()(const Monomial& m) const noexcept { return m.hash(); }
};

/// Descending graded-lex: the leading monomial sorts first.
struct GrlexGreater {
    bool operator()(const Monomial& a, const Monomial& b) const { return grlex_less(b, a); }
};

}  // namespace elimres
