#include "symcensus/abelian.hpp"

#include <algorithm>
#include <cstdlib>
#include <numeric>
#include <stdexcept>

namespace symcensus {

namespace {

IntMatrix identity_matrix(int n) {
    IntMatrix m(n, std::vector<Int>(n, 0));
    for (int i = 0; i < n; ++i) m[i][i] = 1;
    return m;
}

// Row/column elementary operations, mirrored onto the transform matrices so
// that left * input * right = work stays invariant.
struct SnfWork {
    IntMatrix a;
    IntMatrix left;
    IntMatrix right;
    IntMatrix right_inv;
    int rows, cols;

    void swap_rows(int r1, int r2) {
        if (r1 == r2) return;
        std::swap(a[r1], a[r2]);
        std::swap(left[r1], left[r2]);
    }
    void swap_cols(int c1, int c2) {
        if (c1 == c2) return;
        for (auto& row : a) std::swap(row[c1], row[c2]);
        for (auto& row : right) std::swap(row[c1], row[c2]);
        std::swap(right_inv[c1], right_inv[c2]);
    }
    void add_row(int dst, int src, Int q) {  // row_dst += q * row_src
        if (q == 0) return;
        for (int j = 0; j < cols; ++j) a[dst][j] += q * a[src][j];
        for (std::size_t j = 0; j < left[dst].size(); ++j) left[dst][j] += q * left[src][j];
    }
    void add_col(int dst, int src, Int q) {  // col_dst += q * col_src
        if (q == 0) return;
        for (auto& row : a) row[dst] += q * row[src];
        for (auto& row : right) row[dst] += q * row[src];
        for (std::size_t j = 0; j < right_inv[src].size(); ++j)
            right_inv[src][j] -= q * right_inv[dst][j];
    }
    void negate_row(int r) {
        for (auto& x : a[r]) x = -x;
        for (auto& x : left[r]) x = -x;
    }
};

}  // namespace

SmithNormalForm smith_normal_form(const IntMatrix& m) {
    const int rows = static_cast<int>(m.size());
    const int cols = rows == 0 ? 0 : static_cast<int>(m[0].size());
    for (const auto& row : m)
        if (static_cast<int>(row.size()) != cols)
            throw std::invalid_argument("smith_normal_form: ragged matrix");

    SnfWork w{m, identity_matrix(rows), identity_matrix(cols), identity_matrix(cols), rows, cols};

    const int steps = std::min(rows, cols);
    for (int t = 0; t < steps; ++t) {
        for (;;) {
            // Smallest nonzero pivot keeps entry growth in check.
            int pi = -1, pj = -1;
            for (int i = t; i < rows; ++i)
                for (int j = t; j < cols; ++j)
                    if (w.a[i][j] != 0 &&
                        (pi < 0 || std::abs(w.a[i][j]) < std::abs(w.a[pi][pj]))) {
                        pi = i;
                        pj = j;
                    }
            if (pi < 0) goto diagonal_done;
            w.swap_rows(t, pi);
            w.swap_cols(t, pj);

            bool clean = true;
            for (int i = t + 1; i < rows; ++i) {
                Int q = w.a[i][t] / w.a[t][t];
                w.add_row(i, t, -q);
                if (w.a[i][t] != 0) clean = false;
            }
            for (int j = t + 1; j < cols; ++j) {
                Int q = w.a[t][j] / w.a[t][t];
                w.add_col(j, t, -q);
                if (w.a[t][j] != 0) clean = false;
            }
            if (clean) break;
        }
        if (w.a[t][t] < 0) w.negate_row(t);

        // Restore the divisibility chain d_1 | ... | d_t if this step broke it.
        if (t > 0 && w.a[t][t] % w.a[t - 1][t - 1] != 0) {
            w.add_col(t - 1, t, 1);
            t -= 2;  // redo from the disturbed position
        }
    }
diagonal_done:

    SmithNormalForm out;
    out.left = std::move(w.left);
    out.right = std::move(w.right);
    out.right_inv = std::move(w.right_inv);
    out.diagonal.resize(steps, 0);
    int rank = 0;
    for (int t = 0; t < steps; ++t) {
        out.diagonal[t] = w.a[t][t];
        if (out.diagonal[t] != 0) ++rank;
    }
    out.free_rank = cols - rank;
    for (Int d : out.diagonal)
        if (d > 1) out.invariant_factors.push_back(d);
    return out;
}

FiniteAbelianGroup::FiniteAbelianGroup(std::vector<Int> invariant_factors)
    : factors_(std::move(invariant_factors)), order_(1) {
    for (std::size_t i = 0; i < factors_.size(); ++i) {
        if (factors_[i] < 2) throw std::domain_error("invariant factor below 2");
        if (i > 0 && factors_[i] % factors_[i - 1] != 0)
            throw std::domain_error("invariant factors must form a divisibility chain");
        order_ = checked_mul(order_, factors_[i]);
    }
}

FiniteAbelianGroup::FiniteAbelianGroup(std::vector<Int> invariant_factors, DlogFn dlog,
                                       std::vector<ElemKey> generator_reps)
    : FiniteAbelianGroup(std::move(invariant_factors)) {
    if (static_cast<int>(generator_reps.size()) != rank())
        throw std::invalid_argument("generator count does not match rank");
    dlog_ = std::move(dlog);
    generator_reps_ = std::move(generator_reps);
}

std::optional<ExpVec> FiniteAbelianGroup::dlog(ElemKey e) const {
    if (!dlog_) return std::nullopt;
    return dlog_(e);
}

ExpVec FiniteAbelianGroup::reduce(ExpVec v) const {
    if (static_cast<int>(v.size()) != rank())
        throw std::invalid_argument("exponent vector has wrong length");
    for (std::size_t i = 0; i < v.size(); ++i) {
        v[i] %= factors_[i];
        if (v[i] < 0) v[i] += factors_[i];
    }
    return v;
}

ExpVec FiniteAbelianGroup::add(const ExpVec& a, const ExpVec& b) const {
    if (a.size() != b.size()) throw std::invalid_argument("exponent vector length mismatch");
    ExpVec out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] + b[i];
    return reduce(std::move(out));
}

GroupPtr group_from_multiplication(const std::vector<ElemKey>& elements,
                                   const std::function<ElemKey(ElemKey, ElemKey)>& mul) {
    if (elements.empty()) throw std::invalid_argument("empty element set");

    // Identity: the unique e with e*x = x for the first element.
    std::optional<ElemKey> identity;
    for (ElemKey e : elements)
        if (mul(e, elements[0]) == elements[0]) {
            if (mul(elements[0], e) != elements[0]) throw std::domain_error("not commutative");
            identity = e;
            break;
        }
    if (!identity) throw std::domain_error("no identity element");

    // Greedy generator chain: raw[x] holds exponents of x over gens so far,
    // coordinate j bounded by step[j] (the least power of gen j falling into
    // the previously generated subgroup).
    std::unordered_map<ElemKey, ExpVec> raw;
    raw.reserve(elements.size() * 2);
    raw[*identity] = {};
    std::vector<ElemKey> gens;
    std::vector<Int> steps;
    IntMatrix relations;

    for (ElemKey cand : elements) {
        if (raw.count(cand)) continue;
        const int j = static_cast<int>(gens.size());
        for (auto& [k, v] : raw) v.push_back(0);

        Int t = 1;
        ElemKey powv = cand;
        while (!raw.count(powv)) {
            powv = mul(powv, cand);
            ++t;
            if (t > static_cast<Int>(elements.size()) + 1)
                throw std::domain_error("element set not closed under multiplication");
        }
        // cand^t = known element: relation row over all eventual generators.
        ExpVec rel = raw.at(powv);
        rel[j] -= t;
        relations.push_back(std::move(rel));
        gens.push_back(cand);
        steps.push_back(t);

        std::vector<std::pair<ElemKey, ExpVec>> snapshot(raw.begin(), raw.end());
        for (const auto& [base, vec] : snapshot) {
            ElemKey cur = base;
            for (Int s = 1; s < t; ++s) {
                cur = mul(cur, cand);
                ExpVec nv = vec;
                nv[j] = s;
                auto [it, inserted] = raw.emplace(cur, std::move(nv));
                if (!inserted) throw std::domain_error("multiplication table is inconsistent");
            }
        }
    }
    if (raw.size() != elements.size())
        throw std::domain_error("element set not closed under multiplication");
    for (std::size_t a = 0; a < gens.size(); ++a)
        for (std::size_t b = a + 1; b < gens.size(); ++b)
            if (mul(gens[a], gens[b]) != mul(gens[b], gens[a]))
                throw std::domain_error("not commutative");

    const int k = static_cast<int>(gens.size());
    for (auto& row : relations) row.resize(k, 0);
    if (k == 0) {
        const ElemKey id = *identity;
        auto dlog_trivial = [id](ElemKey e) -> std::optional<ExpVec> {
            if (e != id) return std::nullopt;
            return ExpVec{};
        };
        return std::make_shared<FiniteAbelianGroup>(std::vector<Int>{}, dlog_trivial,
                                                    std::vector<ElemKey>{});
    }

    SmithNormalForm snf = smith_normal_form(relations);
    if (snf.free_rank != 0) throw std::logic_error("relation lattice has deficient rank");

    // Canonical coordinates: y = x * right, kept only where d_i > 1.
    std::vector<int> keep;
    for (int i = 0; i < k; ++i)
        if (snf.diagonal[i] > 1) keep.push_back(i);
    std::vector<Int> factors;
    for (int i : keep) factors.push_back(snf.diagonal[i]);

    auto table = std::make_shared<std::unordered_map<ElemKey, ExpVec>>();
    table->reserve(raw.size() * 2);
    for (const auto& [key, x] : raw) {
        ExpVec y(keep.size(), 0);
        for (std::size_t c = 0; c < keep.size(); ++c) {
            Int acc = 0;
            const int col = keep[c];
            for (int r = 0; r < k; ++r) acc += x[r] * snf.right[r][col];
            const Int d = factors[c];
            acc %= d;
            if (acc < 0) acc += d;
            y[c] = acc;
        }
        (*table)[key] = std::move(y);
    }

    // Generator representatives: preimages of the canonical unit vectors,
    // row i of right_inv giving exponents over the raw generators.
    std::vector<Int> gen_orders(k);
    for (int j = 0; j < k; ++j) {
        Int o = 1;
        ElemKey cur = gens[j];
        while (cur != *identity) {
            cur = mul(cur, gens[j]);
            ++o;
        }
        gen_orders[j] = o;
    }
    std::vector<ElemKey> reps;
    for (std::size_t c = 0; c < keep.size(); ++c) {
        ElemKey acc = *identity;
        for (int j = 0; j < k; ++j) {
            Int e = snf.right_inv[keep[c]][j] % gen_orders[j];
            if (e < 0) e += gen_orders[j];
            for (Int s = 0; s < e; ++s) acc = mul(acc, gens[j]);
        }
        reps.push_back(acc);
    }
    for (std::size_t c = 0; c < keep.size(); ++c) {
        ExpVec expect(keep.size(), 0);
        expect[c] = factors[c] == 1 ? 0 : 1;
        if (table->at(reps[c]) != expect)
            throw std::logic_error("generator representative does not match coordinates");
    }

    auto dlog = [table](ElemKey e) -> std::optional<ExpVec> {
        auto it = table->find(e);
        if (it == table->end()) return std::nullopt;
        return it->second;
    };
    return std::make_shared<FiniteAbelianGroup>(std::move(factors), std::move(dlog),
                                                std::move(reps));
}

GroupCharacter::GroupCharacter(GroupPtr group, std::vector<QmodZ> images)
    : group_(std::move(group)), images_(std::move(images)) {
    if (!group_) throw std::invalid_argument("null group");
    if (static_cast<int>(images_.size()) != group_->rank())
        throw std::invalid_argument("image count does not match group rank");
    const auto& d = group_->invariant_factors();
    for (std::size_t i = 0; i < images_.size(); ++i)
        if (d[i] % images_[i].order() != 0)
            throw std::domain_error("character image order does not divide generator order");
}

GroupCharacter GroupCharacter::trivial(GroupPtr group) {
    std::vector<QmodZ> im(group->rank(), QmodZ::zero());
    return GroupCharacter(std::move(group), std::move(im));
}

bool GroupCharacter::is_trivial() const {
    return std::all_of(images_.begin(), images_.end(),
                       [](const QmodZ& q) { return q.is_zero(); });
}

QmodZ GroupCharacter::eval_vec(const ExpVec& v) const {
    if (static_cast<int>(v.size()) != group_->rank())
        throw std::invalid_argument("exponent vector has wrong length");
    QmodZ acc = QmodZ::zero();
    for (std::size_t i = 0; i < v.size(); ++i) acc = acc + images_[i] * v[i];
    return acc;
}

QmodZ GroupCharacter::eval(ElemKey e) const {
    auto v = group_->dlog(e);
    if (!v) throw std::domain_error("element is outside the character's group");
    return eval_vec(*v);
}

GroupCharacter GroupCharacter::mul(const GroupCharacter& other) const {
    if (group_ != other.group_) throw std::invalid_argument("characters on different groups");
    std::vector<QmodZ> im;
    im.reserve(images_.size());
    for (std::size_t i = 0; i < images_.size(); ++i) im.push_back(images_[i] + other.images_[i]);
    return GroupCharacter(group_, std::move(im));
}

GroupCharacter GroupCharacter::pow(Int k) const {
    std::vector<QmodZ> im;
    im.reserve(images_.size());
    for (const auto& q : images_) im.push_back(q * k);
    return GroupCharacter(group_, std::move(im));
}

Int GroupCharacter::order() const {
    Int n = 1;
    for (const auto& q : images_) n = std::lcm(n, q.order());
    return n;
}

std::vector<GroupCharacter> enumerate_characters(const GroupPtr& group, Int max_order) {
    if (group->order() > max_order)
        throw std::domain_error("group too large for character enumeration");
    std::vector<GroupCharacter> out;
    out.reserve(static_cast<std::size_t>(group->order()));
    const auto& d = group->invariant_factors();
    ExpVec a(d.size(), 0);
    for (;;) {
        std::vector<QmodZ> im;
        im.reserve(d.size());
        for (std::size_t i = 0; i < d.size(); ++i) im.emplace_back(a[i], d[i]);
        out.emplace_back(group, std::move(im));
        std::size_t i = 0;
        for (; i < d.size(); ++i) {
            if (++a[i] < d[i]) break;
            a[i] = 0;
        }
        if (i == d.size()) break;
    }
    return out;
}

}  // namespace symcensus
