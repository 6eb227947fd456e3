#pragma once

#include "symcensus/rational.hpp"

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <unordered_map>
#include <vector>

namespace symcensus {

using ElemKey = std::uint64_t;
using ExpVec = std::vector<Int>;
using IntMatrix = std::vector<std::vector<Int>>;

/** Result of a Smith normal form computation: left * input * right = diag(diagonal). */
struct SmithNormalForm {
    IntMatrix left;       // unimodular, rows x rows
    IntMatrix right;      // unimodular, cols x cols
    IntMatrix right_inv;  // inverse of right
    std::vector<Int> diagonal;  // nonnegative, each entry divides the next nonzero one
    std::vector<Int> invariant_factors;  // diagonal entries > 1
    int free_rank = 0;    // generators not constrained by any relation
};

SmithNormalForm smith_normal_form(const IntMatrix& m);

/** Finite abelian group in invariant-factor form d_1 | d_2 | ... | d_r, d_i >= 2.
 *
 * A group may carry a discrete-log map for concrete elements (ElemKey encoded by
 * the builder); abstract groups have none.  The trivial group has rank 0.
 */
class FiniteAbelianGroup {
  public:
    using DlogFn = std::function<std::optional<ExpVec>(ElemKey)>;

    explicit FiniteAbelianGroup(std::vector<Int> invariant_factors);
    FiniteAbelianGroup(std::vector<Int> invariant_factors, DlogFn dlog,
                       std::vector<ElemKey> generator_reps);

    const std::vector<Int>& invariant_factors() const { return factors_; }
    int rank() const { return static_cast<int>(factors_.size()); }
    Int order() const { return order_; }
    Int exponent() const { return factors_.empty() ? 1 : factors_.back(); }

    bool has_dlog() const { return static_cast<bool>(dlog_); }
    std::optional<ExpVec> dlog(ElemKey e) const;
    const std::vector<ElemKey>& generator_reps() const { return generator_reps_; }

    // Componentwise reduction into [0, d_i).
    ExpVec reduce(ExpVec v) const;
    ExpVec add(const ExpVec& a, const ExpVec& b) const;

  private:
    std::vector<Int> factors_;
    Int order_;
    DlogFn dlog_;
    std::vector<ElemKey> generator_reps_;
};

using GroupPtr = std::shared_ptr<const FiniteAbelianGroup>;

/** Structure of a group given by an explicit multiplication rule on element keys.
 *
 * The element set must be closed and commutative with an identity; violations
 * are detected and rejected.  Every element ends up in the group's dlog map.
 */
GroupPtr group_from_multiplication(const std::vector<ElemKey>& elements,
                                   const std::function<ElemKey(ElemKey, ElemKey)>& mul);

/** Character of a FiniteAbelianGroup, valued additively in Q/Z. */
class GroupCharacter {
  public:
    GroupCharacter(GroupPtr group, std::vector<QmodZ> images);

    static GroupCharacter trivial(GroupPtr group);

    const GroupPtr& group() const { return group_; }
    const std::vector<QmodZ>& images() const { return images_; }
    bool is_trivial() const;

    QmodZ eval_vec(const ExpVec& v) const;
    QmodZ eval(ElemKey e) const;  // requires a dlog-carrying group

    GroupCharacter mul(const GroupCharacter& other) const;
    GroupCharacter pow(Int k) const;
    GroupCharacter inverse() const { return pow(-1); }
    Int order() const;  // least n >= 1 with chi^n trivial

    bool operator==(const GroupCharacter& o) const {
        return group_ == o.group_ && images_ == o.images_;
    }

  private:
    GroupPtr group_;
    std::vector<QmodZ> images_;
};

// All characters of a small group, in lexicographic image order.
std::vector<GroupCharacter> enumerate_characters(const GroupPtr& group, Int max_order = 1 << 20);

}  // namespace symcensus
