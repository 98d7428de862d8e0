#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "icmod/errors.hpp"

namespace icmod {

/// Partition of a positive integer: weakly decreasing positive parts.
/// The constructor sorts, so any part order is accepted; the stored form is
/// canonical and usable as a map key.
class Partition {
public:
    Partition() = default;
    explicit Partition(std::vector<int> parts) : parts_(std::move(parts)) {
        for (int p : parts_)
            if (p <= 0) throw usage_error("Partition: parts must be positive");
        std::sort(parts_.begin(), parts_.end(), std::greater<>());
    }

    static Partition parse(const std::string& text) {
        std::vector<int> parts;
        std::istringstream is(text);
        std::string tok;
        while (std::getline(is, tok, ',')) {
            try {
                std::size_t pos = 0;
                const int v = std::stoi(tok, &pos);
                if (pos != tok.size()) throw std::invalid_argument(tok);
                parts.push_back(v);
            } catch (const std::exception&) {
                throw usage_error("Partition: cannot parse part '" + tok + "' in '" + text + "'");
            }
        }
        if (parts.empty()) throw usage_error("Partition: empty partition string");
        return Partition(std::move(parts));
    }

    const std::vector<int>& parts() const { return parts_; }
    int length() const { return static_cast<int>(parts_.size()); }
    int sum() const { return std::accumulate(parts_.begin(), parts_.end(), 0); }
    int part(int i) const { return parts_.at(static_cast<std::size_t>(i)); }
    bool empty() const { return parts_.empty(); }

    auto operator<=>(const Partition&) const = default;

    std::string str() const {
        std::string s;
        for (std::size_t i = 0; i < parts_.size(); ++i) {
            if (i) s += ',';
            s += std::to_string(parts_[i]);
        }
        return s;
    }

private:
    std::vector<int> parts_;
};

inline std::ostream& operator<<(std::ostream& os, const Partition& p) {
    return os << "[" << p.str() << "]";
}

/// All partitions of r in decreasing-lexicographic order: [r] first,
/// [1,...,1] last.
inline std::vector<Partition> partitions_of(int r) {
    if (r < 1) throw usage_error("partitions_of: r >= 1 required");
    std::vector<Partition> out;
    std::vector<int> cur;
    auto rec = [&](auto&& self, int remaining, int max_part) -> void {
        if (remaining == 0) {
            out.emplace_back(cur); // already decreasing
            return;
        }
        for (int p = std::min(remaining, max_part); p >= 1; --p) {
            cur.push_back(p);
            self(self, remaining - p, p);
            cur.pop_back();
        }
    };
    rec(rec, r, r);
    return out;
}

/// Multi-partition: sequence of (rank, multiplicity) pairs with ranks weakly
/// decreasing and, among equal ranks, multiplicities weakly decreasing;
/// sum of multiplicity * rank equals r.
class MultiPartition {
public:
    MultiPartition() = default;
    explicit MultiPartition(std::vector<std::pair<int, int>> pairs) : pairs_(std::move(pairs)) {
        for (std::size_t i = 0; i < pairs_.size(); ++i) {
            auto [rk, m] = pairs_[i];
            if (rk <= 0 || m <= 0)
                throw usage_error("MultiPartition: ranks and multiplicities must be positive");
            if (i > 0) {
                auto [prk, pm] = pairs_[i - 1];
                if (rk > prk || (rk == prk && m > pm))
                    throw usage_error("MultiPartition: pairs out of canonical order");
            }
        }
    }

    const std::vector<std::pair<int, int>>& pairs() const { return pairs_; }
    int length() const { return static_cast<int>(pairs_.size()); }

    int sum() const {
        int s = 0;
        for (auto [rk, m] : pairs_) s += rk * m;
        return s;
    }

    /// The partition obtained by repeating each rank its multiplicity times.
    Partition induced_partition() const {
        std::vector<int> parts;
        for (auto [rk, m] : pairs_)
            for (int i = 0; i < m; ++i) parts.push_back(rk);
        return Partition(std::move(parts));
    }

    bool is_abelian() const {
        for (auto [rk, m] : pairs_)
            if (m != 1) return false;
        return true;
    }

    auto operator<=>(const MultiPartition&) const = default;

    std::string str() const {
        std::string s;
        for (std::size_t i = 0; i < pairs_.size(); ++i) {
            if (i) s += ' ';
            s += "(" + std::to_string(pairs_[i].first) + "," + std::to_string(pairs_[i].second) + ")";
        }
        return s;
    }

private:
    std::vector<std::pair<int, int>> pairs_;
};

inline std::ostream& operator<<(std::ostream& os, const MultiPartition& m) {
    return os << "[" << m.str() << "]";
}

/// All multi-partitions of r.  Canonical order: lexicographic over the pair
/// sequences, where pairs compare by rank descending, then multiplicity
/// ascending.  For r = 2 this yields [(2,1)], [(1,1),(1,1)], [(1,2)].
inline std::vector<MultiPartition> multipartitions_of(int r) {
    if (r < 1) throw usage_error("multipartitions_of: r >= 1 required");
    std::vector<MultiPartition> out;
    std::vector<std::pair<int, int>> cur;
    // Candidate next pairs iterate rank descending, multiplicity ascending;
    // within a multi-partition equal ranks must have multiplicities weakly
    // decreasing, bounded by the previous pair.
    auto rec = [&](auto&& self, int remaining) -> void {
        if (remaining == 0) {
            out.emplace_back(MultiPartition(cur));
            return;
        }
        const int max_rank = cur.empty() ? remaining : std::min(cur.back().first, remaining);
        for (int rk = max_rank; rk >= 1; --rk) {
            int max_mult = remaining / rk;
            if (!cur.empty() && cur.back().first == rk) max_mult = std::min(max_mult, cur.back().second);
            for (int m = 1; m <= max_mult; ++m) {
                cur.emplace_back(rk, m);
                self(self, remaining - rk * m);
                cur.pop_back();
            }
        }
    };
    rec(rec, r);
    return out;
}

/// Decomposition of {1,...,k} into disjoint nonempty blocks, stored with
/// sorted elements and blocks ordered by minimum element.
class SetDecomposition {
public:
    explicit SetDecomposition(std::vector<std::vector<int>> blocks) : blocks_(std::move(blocks)) {
        for (auto& b : blocks_) {
            if (b.empty()) throw usage_error("SetDecomposition: empty block");
            std::sort(b.begin(), b.end());
        }
        std::sort(blocks_.begin(), blocks_.end(),
                  [](const auto& a, const auto& b) { return a.front() < b.front(); });
    }

    const std::vector<std::vector<int>>& blocks() const { return blocks_; }
    int block_count() const { return static_cast<int>(blocks_.size()); }

    int ground_size() const {
        int n = 0;
        for (const auto& b : blocks_) n += static_cast<int>(b.size());
        return n;
    }

    bool is_all_singletons() const {
        for (const auto& b : blocks_)
            if (b.size() != 1) return false;
        return true;
    }

    auto operator<=>(const SetDecomposition&) const = default;

private:
    std::vector<std::vector<int>> blocks_;
};

/// All Bell(k) decompositions of {1,...,k}, enumerated via restricted growth
/// strings (deterministic order).
inline std::vector<SetDecomposition> set_decompositions(int k) {
    if (k < 1) throw usage_error("set_decompositions: k >= 1 required");
    std::vector<SetDecomposition> out;
    std::vector<int> rgs(static_cast<std::size_t>(k), 0);
    auto rec = [&](auto&& self, int i, int max_used) -> void {
        if (i == k) {
            std::vector<std::vector<int>> blocks(static_cast<std::size_t>(max_used) + 1);
            for (int j = 0; j < k; ++j) blocks[static_cast<std::size_t>(rgs[static_cast<std::size_t>(j)])].push_back(j + 1);
            out.emplace_back(SetDecomposition(std::move(blocks)));
            return;
        }
        for (int b = 0; b <= max_used + 1; ++b) {
            rgs[static_cast<std::size_t>(i)] = b;
            self(self, i + 1, std::max(max_used, b));
        }
    };
    rec(rec, 0, -1);
    return out;
}

struct Composition {
    Partition mu;                      // composed partition, parts decreasing
    std::vector<Partition> restricted; // induced partitions, aligned with mu
};

/// Compose a decomposition of {1,...,length(rho)} with rho: block j yields a
/// part m_j = sum of the parts indexed by the block, and the induced
/// partition rho restricted to the block.  Output is sorted by part
/// descending (ties by restricted partition descending) so that `restricted`
/// stays aligned with `mu`.
inline Composition compose(const SetDecomposition& lambda, const Partition& rho) {
    if (lambda.ground_size() != rho.length())
        throw usage_error("compose: decomposition does not match partition length");
    std::vector<std::pair<int, Partition>> items;
    for (const auto& block : lambda.blocks()) {
        std::vector<int> sub;
        int m = 0;
        for (int i : block) {
            if (i < 1 || i > rho.length())
                throw usage_error("compose: block element out of range");
            sub.push_back(rho.part(i - 1));
            m += rho.part(i - 1);
        }
        items.emplace_back(m, Partition(std::move(sub)));
    }
    std::sort(items.begin(), items.end(), [](const auto& a, const auto& b) {
        if (a.first != b.first) return a.first > b.first;
        return a.second > b.second;
    });
    Composition out;
    std::vector<int> mu_parts;
    for (auto& [m, sub] : items) {
        mu_parts.push_back(m);
        out.restricted.push_back(std::move(sub));
    }
    out.mu = Partition(std::move(mu_parts));
    return out;
}

/// Order of Aut(rho): product of factorials of the part multiplicities.
inline std::uint64_t aut_order(const Partition& rho) {
    std::uint64_t result = 1;
    std::uint64_t run = 1;
    for (int i = 1; i <= rho.length(); ++i) {
        if (i < rho.length() && rho.part(i) == rho.part(i - 1)) {
            ++run;
        } else {
            for (std::uint64_t j = 2; j <= run; ++j) result *= j;
            run = 1;
        }
    }
    return result;
}

/// d(rho) = sum_{i<j} r_i r_j (g-1), the codimension weight of rho.
inline long d_rho(const Partition& rho, int g) {
    require_genus(g);
    long s = 0;
    for (int i = 0; i < rho.length(); ++i)
        for (int j = i + 1; j < rho.length(); ++j)
            s += static_cast<long>(rho.part(i)) * rho.part(j);
    return s * (g - 1);
}

/// Dimension of the stratum indexed by a multi-partition: one term
/// rank^2 (g-1) + 1 per (rank, multiplicity) pair; the multiplicity does not
/// multiply the term.
inline long stratum_dim(const MultiPartition& mp, int g) {
    require_genus(g);
    long s = 0;
    for (auto [rk, m] : mp.pairs()) s += static_cast<long>(rk) * rk * (g - 1) + 1;
    return s;
}

} // namespace icmod
