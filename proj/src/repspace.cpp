#include "qp/repspace.hpp"

#include <functional>
#include <random>

namespace qp {

Mat Mat::eye(int n) {
    Mat m(n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
}

bool Mat::is_zero() const {
    for (const Rat& x : a)
        if (x != 0) return false;
    return true;
}

Rat Mat::trace() const {
    Rat t;
    for (int i = 0; i < std::min(rows, cols); ++i) t += at(i, i);
    return t;
}

Mat operator*(const Mat& x, const Mat& y) {
    if (x.cols != y.rows) throw RepError("matrix shape mismatch");
    Mat z(x.rows, y.cols);
    for (int i = 0; i < x.rows; ++i)
        for (int k = 0; k < x.cols; ++k) {
            if (x.at(i, k) == 0) continue;
            for (int j = 0; j < y.cols; ++j) {
                if (y.at(k, j) == 0) continue;
                z.at(i, j) += x.at(i, k) * y.at(k, j);
            }
        }
    return z;
}

Mat operator+(Mat x, const Mat& y) {
    if (x.rows != y.rows || x.cols != y.cols) throw RepError("matrix shape mismatch");
    for (size_t i = 0; i < x.a.size(); ++i) x.a[i] += y.a[i];
    return x;
}

Mat operator-(Mat x, const Mat& y) {
    if (x.rows != y.rows || x.cols != y.cols) throw RepError("matrix shape mismatch");
    for (size_t i = 0; i < x.a.size(); ++i) x.a[i] -= y.a[i];
    return x;
}

Mat operator*(const Rat& c, Mat x) {
    for (Rat& v : x.a) v *= c;
    return x;
}

std::optional<Mat> mat_inverse(const Mat& m) {
    if (m.rows != m.cols) return std::nullopt;
    int n = m.rows;
    Mat a = m;
    Mat inv = Mat::eye(n);
    for (int col = 0; col < n; ++col) {
        int pivot = -1;
        for (int r = col; r < n; ++r)
            if (a.at(r, col) != 0) {
                pivot = r;
                break;
            }
        if (pivot < 0) return std::nullopt;
        if (pivot != col)
            for (int j = 0; j < n; ++j) {
                std::swap(a.at(pivot, j), a.at(col, j));
                std::swap(inv.at(pivot, j), inv.at(col, j));
            }
        Rat d = a.at(col, col);
        for (int j = 0; j < n; ++j) {
            a.at(col, j) /= d;
            inv.at(col, j) /= d;
        }
        for (int r = 0; r < n; ++r) {
            if (r == col || a.at(r, col) == 0) continue;
            Rat f = a.at(r, col);
            for (int j = 0; j < n; ++j) {
                a.at(r, j) -= f * a.at(col, j);
                inv.at(r, j) -= f * inv.at(col, j);
            }
        }
    }
    return inv;
}

std::optional<std::vector<Rat>> solve_linear(const Mat& m, const std::vector<Rat>& rhs) {
    if (static_cast<int>(rhs.size()) != m.rows) throw RepError("solve shape mismatch");
    Mat a = m;
    std::vector<Rat> b = rhs;
    int n = m.rows, k = m.cols;
    std::vector<int> pivot_col_of_row(static_cast<size_t>(n), -1);
    int row = 0;
    for (int col = 0; col < k && row < n; ++col) {
        int piv = -1;
        for (int r = row; r < n; ++r)
            if (a.at(r, col) != 0) {
                piv = r;
                break;
            }
        if (piv < 0) continue;
        if (piv != row) {
            for (int j = 0; j < k; ++j) std::swap(a.at(piv, j), a.at(row, j));
            std::swap(b[static_cast<size_t>(piv)], b[static_cast<size_t>(row)]);
        }
        Rat d = a.at(row, col);
        for (int j = 0; j < k; ++j) a.at(row, j) /= d;
        b[static_cast<size_t>(row)] /= d;
        for (int r = 0; r < n; ++r) {
            if (r == row || a.at(r, col) == 0) continue;
            Rat f = a.at(r, col);
            for (int j = 0; j < k; ++j) a.at(r, j) -= f * a.at(row, j);
            b[static_cast<size_t>(r)] -= f * b[static_cast<size_t>(row)];
        }
        pivot_col_of_row[static_cast<size_t>(row)] = col;
        ++row;
    }
    for (int r = row; r < n; ++r)
        if (b[static_cast<size_t>(r)] != 0) return std::nullopt;
    std::vector<Rat> x(static_cast<size_t>(k), Rat(0));
    for (int r = 0; r < row; ++r) x[static_cast<size_t>(pivot_col_of_row[static_cast<size_t>(r)])] = b[static_cast<size_t>(r)];
    return x;
}

DimVector DimVector::make(const Quiver& q, const std::map<int, int>& alpha) {
    DimVector d;
    d.vertices = q.vertices();
    d.alpha = alpha;
    for (int v : q.vertices()) {
        auto it = alpha.find(v);
        if (it == alpha.end() || it->second <= 0)
            throw RepError("dimension vector needs a positive entry for vertex " + std::to_string(v));
        d.offset_of_vertex.push_back(d.total);
        for (int k = 0; k < it->second; ++k) d.block_of.push_back(v);
        d.total += it->second;
    }
    return d;
}

int DimVector::offset(const Quiver& q, int vertex) const {
    return offset_of_vertex.at(static_cast<size_t>(q.vertex_index(vertex)));
}

void RepPoint::set_arrow_matrix(int idx, Mat m) {
    if (arrow_mats_.empty()) arrow_mats_.resize(static_cast<size_t>(quiver_->arrow_count()), Mat(dims_.total, dims_.total));
    const Arrow& a = quiver_->arrow(idx);
    if (m.rows == dims_.dim(a.tail) && m.cols == dims_.dim(a.head)) {
        Mat full(dims_.total, dims_.total);
        int ro = dims_.offset(*quiver_, a.tail);
        int co = dims_.offset(*quiver_, a.head);
        for (int i = 0; i < m.rows; ++i)
            for (int j = 0; j < m.cols; ++j) full.at(ro + i, co + j) = m.at(i, j);
        arrow_mats_[static_cast<size_t>(idx)] = std::move(full);
    } else if (m.rows == dims_.total && m.cols == dims_.total) {
        arrow_mats_[static_cast<size_t>(idx)] = std::move(m);
    } else {
        throw RepError("arrow matrix has wrong shape");
    }
}

bool RepPoint::finalize() {
    inverse_mats_.clear();
    for (int i = 0; i < quiver_->arrow_count(); ++i) {
        if (!quiver_->inverted(i)) continue;
        const Arrow& a = quiver_->arrow(i);
        int n = dims_.dim(a.tail);
        int off = dims_.offset(*quiver_, a.tail);
        Mat prod = arrow_matrix(i) * arrow_matrix(quiver_->partner(i));
        Mat block(n, n);
        for (int r = 0; r < n; ++r)
            for (int c = 0; c < n; ++c) block.at(r, c) = prod.at(off + r, off + c) + (r == c ? 1 : 0);
        auto inv = mat_inverse(block);
        if (!inv) return false;
        Mat full(dims_.total, dims_.total);
        for (int r = 0; r < n; ++r)
            for (int c = 0; c < n; ++c) full.at(off + r, off + c) = inv->at(r, c);
        inverse_mats_[i] = std::move(full);
    }
    return true;
}

Mat RepPoint::letter_matrix(const Letter& l) const {
    switch (l.kind) {
        case LetterKind::Arrow: return arrow_matrix(l.arrow);
        case LetterKind::Inverse: {
            auto it = inverse_mats_.find(l.arrow);
            if (it == inverse_mats_.end()) throw RepError("inverse block missing; point not finalized");
            return it->second;
        }
        default: throw RepError("positive-degree letters have no matrix");
    }
}

Mat RepPoint::idem_matrix(int vertex) const {
    Mat m(dims_.total, dims_.total);
    int off = dims_.offset(*quiver_, vertex);
    for (int k = 0; k < dims_.dim(vertex); ++k) m.at(off + k, off + k) = 1;
    return m;
}

RepPoint random_point(const QuiverPtr& q, const std::map<int, int>& alpha, std::uint64_t seed) {
    DimVector dims = DimVector::make(*q, alpha);
    for (int attempt = 0; attempt < 100; ++attempt) {
        std::mt19937_64 rng(seed + 0x9e3779b97f4a7c15ULL * static_cast<std::uint64_t>(attempt));
        RepPoint p(q, dims);
        for (int i = 0; i < q->arrow_count(); ++i) {
            const Arrow& a = q->arrow(i);
            int up = q->unit_partner(i);
            if (up >= 0) {
                // connector rectangles: identity pattern (needs equal dims)
                if (dims.dim(a.tail) != dims.dim(a.head))
                    throw RepError("unit-pair arrows need equal dimensions at both vertices");
                Mat m(dims.dim(a.tail), dims.dim(a.head));
                for (int k = 0; k < m.rows; ++k) m.at(k, k) = 1;
                p.set_arrow_matrix(i, std::move(m));
                continue;
            }
            Mat m(dims.dim(a.tail), dims.dim(a.head));
            for (Rat& x : m.a) {
                long num = static_cast<long>(rng() % 15) - 7; // [-7, 7]
                long den = static_cast<long>(rng() % 7) + 1;  // [1, 7]
                x = rat(num, den);
            }
            p.set_arrow_matrix(i, std::move(m));
        }
        if (p.finalize()) return p;
    }
    throw RepError("random_point: no nonsingular point after 100 attempts");
}

Mat evaluate_element(const Element& x, const RepPoint& p) {
    int deg = 0;
    if (!x.homogeneous_degree(&deg) || deg != 0)
        throw RepError("evaluate_element needs a degree-0 element");
    require_same_quiver(x, Element(p.quiver()));
    Mat out(p.total_dim(), p.total_dim());
    for (const auto& [w, c] : x.terms()) {
        Mat m = w.is_idempotent() ? p.idem_matrix(w.vertex) : p.letter_matrix(w.letters[0]);
        for (size_t k = 1; k < w.letters.size(); ++k) m = m * p.letter_matrix(w.letters[k]);
        out = out + c * m;
    }
    return out;
}

Arr::Arr(std::vector<int> s) : shape(std::move(s)) {
    size_t n = 1;
    for (int d : shape) n *= static_cast<size_t>(d);
    a.assign(n, Rat(0));
}

static size_t flat_index(const std::vector<int>& shape, std::initializer_list<int> idx) {
    size_t f = 0;
    size_t k = 0;
    for (int i : idx) {
        f = f * static_cast<size_t>(shape[k]) + static_cast<size_t>(i);
        ++k;
    }
    return f;
}

Rat& Arr::at(std::initializer_list<int> idx) { return a[flat_index(shape, idx)]; }
const Rat& Arr::at(std::initializer_list<int> idx) const { return a[flat_index(shape, idx)]; }

bool Arr::is_zero() const {
    for (const Rat& x : a)
        if (x != 0) return false;
    return true;
}

Arr operator-(Arr x, const Arr& y) {
    if (x.shape != y.shape) throw RepError("array shape mismatch");
    for (size_t i = 0; i < x.a.size(); ++i) x.a[i] -= y.a[i];
    return x;
}

Arr induced_bracket_tensor(const DoubleBracketTable& T, const Element& a, const Element& b,
                           const RepPoint& p) {
    int n = p.total_dim();
    Arr B({n, n, n, n});
    Tensor t = evaluate_double_bracket(T, a, b);
    for (const auto& [legs, c] : t.terms()) {
        Mat m1 = evaluate_element(Element::single(t.quiver(), legs[0]), p);
        Mat m2 = evaluate_element(Element::single(t.quiver(), legs[1]), p);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                for (int u = 0; u < n; ++u)
                    for (int v = 0; v < n; ++v) B.at({i, j, u, v}) += c * m1.at(u, j) * m2.at(i, v);
    }
    return B;
}

Arr evaluate_tensor(const Tensor& t, const RepPoint& p) {
    int n = p.total_dim();
    std::vector<int> shape(static_cast<size_t>(2 * t.arity()), n);
    Arr out(shape);
    for (const auto& [legs, c] : t.terms()) {
        std::vector<Mat> ms;
        ms.reserve(legs.size());
        for (const Word& w : legs) ms.push_back(evaluate_element(Element::single(t.quiver(), w), p));
        std::vector<int> idx(static_cast<size_t>(2 * t.arity()), 0);
        std::function<void(int, Rat)> rec = [&](int leg, Rat acc) {
            if (leg == t.arity()) {
                size_t f = 0;
                for (size_t k = 0; k < idx.size(); ++k)
                    f = f * static_cast<size_t>(n) + static_cast<size_t>(idx[k]);
                out.a[f] += acc;
                return;
            }
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j) {
                    const Rat& e = ms[static_cast<size_t>(leg)].at(i, j);
                    if (e == 0) continue;
                    idx[static_cast<size_t>(2 * leg)] = i;
                    idx[static_cast<size_t>(2 * leg) + 1] = j;
                    rec(leg + 1, acc * e);
                }
        };
        rec(0, c);
    }
    return out;
}

namespace {

// {x_pq, w_uv} = {{x, w}}'_{uq} {{x, w}}''_{pv} with {{x,-}} given by a
// table engine; used for the nested Jacobi expansion.
struct CoordBracket {
    const DoubleBracketTable* T;
    const RepPoint* p;
    std::map<Word, Tensor> cache; // {{x, word}} per fixed first argument x
    Element x;

    CoordBracket(const DoubleBracketTable& table, const RepPoint& point, Element first)
        : T(&table), p(&point), x(std::move(first)) {}

    const Tensor& value(const Word& w) {
        auto it = cache.find(w);
        if (it != cache.end()) return it->second;
        Tensor t = evaluate_double_bracket(*T, x, Element::single(T->quiver(), w));
        return cache.emplace(w, std::move(t)).first->second;
    }

    // {x_pq, w_uv}
    Rat bracket_entry(const Word& w, int pp, int qq, int u, int v) {
        Rat out;
        const Tensor& t = value(w);
        for (const auto& [legs, c] : t.terms()) {
            Mat m1 = evaluate_element(Element::single(T->quiver(), legs[0]), *p);
            Mat m2 = evaluate_element(Element::single(T->quiver(), legs[1]), *p);
            out += c * m1.at(u, qq) * m2.at(pp, v);
        }
        return out;
    }
};

} // namespace

JacobiResidual jacobi_residual(const DoubleBracketTable& T, const Element& a, const Element& b,
                               const Element& c, const RepPoint& p) {
    int n = p.total_dim();
    const QuiverPtr& q = T.quiver();
    Arr lhs({n, n, n, n, n, n});

    // {x_pq, {y_rs, z_uv}} summed cyclically over (a,b,c) with index triples
    // rotating along.
    struct Slot {
        const Element* x;
        int i0, i1; // which index pair of (pq, rs, uv) this argument carries
    };
    std::vector<const Element*> args = {&a, &b, &c};
    for (int cyc = 0; cyc < 3; ++cyc) {
        const Element& x = *args[static_cast<size_t>(cyc)];
        const Element& y = *args[static_cast<size_t>((cyc + 1) % 3)];
        const Element& z = *args[static_cast<size_t>((cyc + 2) % 3)];
        Tensor yz = evaluate_double_bracket(T, y, z);
        CoordBracket cb(T, p, x);
        // cache evaluated leg matrices of yz terms
        for (const auto& [legs, cw] : yz.terms()) {
            Mat m1 = evaluate_element(Element::single(q, legs[0]), p);
            Mat m2 = evaluate_element(Element::single(q, legs[1]), p);
            // {y_rs, z_uv} = sum m1_{us} m2_{rv}; then
            // {x_pq, m1_{us} m2_{rv}} = {x_pq, (leg0)_{us}} m2_{rv} + m1_{us} {x_pq, (leg1)_{rv}}
            for (int pp = 0; pp < n; ++pp)
                for (int qq = 0; qq < n; ++qq)
                    for (int r = 0; r < n; ++r)
                        for (int s = 0; s < n; ++s)
                            for (int u = 0; u < n; ++u)
                                for (int v = 0; v < n; ++v) {
                                    Rat term = cb.bracket_entry(legs[0], pp, qq, u, s) * m2.at(r, v) +
                                               m1.at(u, s) * cb.bracket_entry(legs[1], pp, qq, r, v);
                                    if (term == 0) continue;
                                    term *= cw;
                                    // place into lhs with index pairs rotated by cyc
                                    int idx[6];
                                    int pairs[3][2] = {{pp, qq}, {r, s}, {u, v}};
                                    for (int k = 0; k < 3; ++k) {
                                        idx[2 * ((cyc + k) % 3)] = pairs[k][0];
                                        idx[2 * ((cyc + k) % 3) + 1] = pairs[k][1];
                                    }
                                    lhs.at({idx[0], idx[1], idx[2], idx[3], idx[4], idx[5]}) += term;
                                }
        }
    }

    // RHS: {{a,b,c}}'_{uq} {{a,b,c}}''_{ps} {{a,b,c}}'''_{rv}
    //     - {{a,c,b}}'_{rq} {{a,c,b}}''_{pv} {{a,c,b}}'''_{us}
    Arr rhs({n, n, n, n, n, n});
    auto add_triple = [&](const Tensor& t, bool swapped) {
        for (const auto& [legs, cw] : t.terms()) {
            Mat m1 = evaluate_element(Element::single(q, legs[0]), p);
            Mat m2 = evaluate_element(Element::single(q, legs[1]), p);
            Mat m3 = evaluate_element(Element::single(q, legs[2]), p);
            for (int pp = 0; pp < n; ++pp)
                for (int qq = 0; qq < n; ++qq)
                    for (int r = 0; r < n; ++r)
                        for (int s = 0; s < n; ++s)
                            for (int u = 0; u < n; ++u)
                                for (int v = 0; v < n; ++v) {
                                    Rat term = swapped ? Rat(-(cw * m1.at(r, qq) * m2.at(pp, v) * m3.at(u, s)))
                                                       : Rat(cw * m1.at(u, qq) * m2.at(pp, s) * m3.at(r, v));
                                    rhs.at({pp, qq, r, s, u, v}) += term;
                                }
        }
    };
    add_triple(triple_bracket(T, a, b, c), false);
    add_triple(triple_bracket(T, a, c, b), true);

    JacobiResidual out{lhs, lhs - rhs};
    return out;
}

Rat evaluate_polyvector_action(const Element& P, int i, int j, const std::vector<CoordFn>& coords,
                               const RepPoint& p) {
    const QuiverPtr& q = P.quiver();
    int n = 0;
    if (!P.homogeneous_grade(LetterKind::Deriv, &n))
        throw RepError("evaluate_polyvector_action needs grade-homogeneous input");
    if (static_cast<int>(coords.size()) != n) throw RepError("coordinate count must match the grade");
    int N = p.total_dim();

    // delta_{xy}(c_{uv}) for a grade-1 element delta
    auto first_order = [&](const Element& delta, int x, int y, const CoordFn& f) {
        Tensor t = apply_double_derivation(delta, f.word);
        Rat out;
        for (const auto& [legs, c] : t.terms()) {
            Mat m1 = evaluate_element(Element::single(q, legs[0]), p);
            Mat m2 = evaluate_element(Element::single(q, legs[1]), p);
            out += c * m1.at(f.u, y) * m2.at(x, f.v);
        }
        return out;
    };

    Rat total;
    for (const auto& [w, cw] : P.terms()) {
        auto factors = grade_one_factors(q, w);
        // X(P)_{ij} chains the factors i -> k1 -> ... -> j and applies the
        // wedge to the coordinates: sum over permutations s with sign,
        // factor at wedge slot m eating coordinate s^{-1}(m).
        std::vector<int> s(static_cast<size_t>(n));
        for (int k = 0; k < n; ++k) s[static_cast<size_t>(k)] = k;
        do {
            int sgn = 1;
            for (int x = 0; x < n; ++x)
                for (int y = x + 1; y < n; ++y)
                    if (s[static_cast<size_t>(x)] > s[static_cast<size_t>(y)]) sgn = -sgn;
            // chain k_0 = i, k_n = j; factor m (0-based) has indices (k_m, k_{m+1});
            // factor at wedge slot m is applied to coordinate f with s[f] == m.
            std::vector<int> which_coord(static_cast<size_t>(n));
            for (int f = 0; f < n; ++f) which_coord[static_cast<size_t>(s[static_cast<size_t>(f)])] = f;
            std::function<void(int, int, Rat)> rec = [&](int m, int prev, Rat prod) {
                if (prod == 0) return;
                if (m == n - 1) {
                    Rat val = first_order(factors[static_cast<size_t>(m)].as_element(q), prev, j,
                                          coords[static_cast<size_t>(which_coord[static_cast<size_t>(m)])]);
                    total += cw * Rat(sgn) * prod * val;
                    return;
                }
                for (int k = 0; k < N; ++k) {
                    Rat val = first_order(factors[static_cast<size_t>(m)].as_element(q), prev, k,
                                          coords[static_cast<size_t>(which_coord[static_cast<size_t>(m)])]);
                    if (val != 0) rec(m + 1, k, prod * val);
                }
            };
            rec(0, i, Rat(1));
        } while (std::next_permutation(s.begin(), s.end()));
    }
    return total;
}

bool trace_check(const DoubleBracketTable& T, const Element& a, const Element& b, const RepPoint& p,
                 Rat* lhs_out, Rat* rhs_out) {
    Arr B = induced_bracket_tensor(T, a, b, p);
    int n = p.total_dim();
    Rat lhs;
    for (int i = 0; i < n; ++i)
        for (int u = 0; u < n; ++u) lhs += B.at({i, i, u, u});
    Rat rhs = evaluate_element(single_bracket(T, a, b), p).trace();
    if (lhs_out) *lhs_out = lhs;
    if (rhs_out) *rhs_out = rhs;
    return lhs == rhs;
}

bool trace_check_schouten(const Element& P, const Element& Q, const CoordFn& f, const RepPoint& p) {
    const QuiverPtr& q = P.quiver();
    int n = p.total_dim();
    int gp = 0, gq = 0;
    if (!P.homogeneous_grade(LetterKind::Deriv, &gp) || gp != 1 ||
        !Q.homogeneous_grade(LetterKind::Deriv, &gq) || gq != 1)
        throw RepError("trace_check_schouten expects grade-1 poly-vectors");

    // tr D applied to a coordinate g_{uv} is the (u,v) coordinate of the
    // element sum_k D(g)'_k D(g)''_k (the chain index contracts the legs),
    // so the commutator [tr P, tr Q] can be computed symbolically.
    auto traced_field = [&](const Element& D, const Element& g) {
        Tensor t = apply_double_derivation(D, g);
        Element out(q);
        for (const auto& [legs, c] : t.terms())
            out += c * multiply(Element::single(q, legs[0]), Element::single(q, legs[1]));
        return out;
    };
    Element fword = f.word;
    Tensor Pqg = apply_double_derivation(P, traced_field(Q, fword));
    Tensor Qpf = apply_double_derivation(Q, traced_field(P, fword));

    auto traced_value = [&](const Tensor& t) {
        Rat out;
        for (const auto& [legs, c] : t.terms()) {
            Mat m1 = evaluate_element(Element::single(q, legs[0]), p);
            Mat m2 = evaluate_element(Element::single(q, legs[1]), p);
            // sum_i X(')_{u i} X('')_{i v} at the coordinate's indices
            Rat acc;
            for (int i = 0; i < n; ++i) acc += m1.at(f.u, i) * m2.at(i, f.v);
            out += c * acc;
        }
        return out;
    };
    Rat lhs = traced_value(Pqg) - traced_value(Qpf);

    // RHS: tr {P,Q} applied to f.
    Element pq = schouten_single(P, Q);
    Tensor PQf = apply_double_derivation(pq, f.word);
    Rat rhs = traced_value(PQf);
    return lhs == rhs;
}

} // namespace qp
