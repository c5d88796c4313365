#pragma once

#include "fident/poly.hpp"

#include <cstddef>
#include <map>
#include <optional>

namespace fident {

using SparseVec = std::map<std::size_t, Rational>;

/// Incremental exact row echelon form over Q with provenance.
///
/// Generators are added one at a time with a label. Each stored row keeps the
/// combination of generators that produced it, so a target in the span can be
/// written back in terms of the original generators.
class SpanBasis {
public:
    /// Returns true when the generator increased the rank.
    bool add(const SparseVec& v, std::size_t label);
    /// Coefficients per label with sum coeff*gen == target, or nullopt if outside the span.
    std::optional<SparseVec> express(const SparseVec& target) const;
    bool contains(const SparseVec& target) const;
    std::size_t rank() const { return rows_.size(); }

private:
    struct Row {
        SparseVec v;
        SparseVec comb;
    };
    std::map<std::size_t, Row> rows_;  // keyed by pivot = smallest key, pivot entry 1

    void reduce(SparseVec& w, SparseVec* comb) const;
};

/// Dense-index helper: maps arbitrary keys to consecutive indices.
template <class Key>
class Indexer {
public:
    std::size_t operator()(const Key& k) {
        auto [it, inserted] = idx_.try_emplace(k, idx_.size());
        return it->second;
    }
    std::optional<std::size_t> find(const Key& k) const {
        auto it = idx_.find(k);
        if (it == idx_.end()) return std::nullopt;
        return it->second;
    }
    std::size_t size() const { return idx_.size(); }

private:
    std::map<Key, std::size_t> idx_;
};

}  // namespace fident
