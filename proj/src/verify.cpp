#include "qp/verify.hpp"

#include <algorithm>
#include <array>
#include <random>
#include <sstream>

namespace qp {

const char* status_name(Status s) {
    switch (s) {
        case Status::Proved: return "PROVED";
        case Status::Probable: return "PROBABLE";
        case Status::Fail: return "FAIL";
        case Status::Error: return "ERROR";
    }
    return "?";
}

Status worse(Status a, Status b) { return static_cast<int>(a) >= static_cast<int>(b) ? a : b; }

void Report::add(std::string name, Status s, std::string detail) {
    checks.push_back(CheckResult{std::move(name), s, std::move(detail)});
}

Status Report::overall() const {
    Status s = Status::Proved;
    for (const auto& c : checks) s = worse(s, c.status);
    return s;
}

int Report::exit_code() const {
    switch (overall()) {
        case Status::Proved:
        case Status::Probable: return 0;
        case Status::Fail: return 1;
        case Status::Error: return 2;
    }
    return 2;
}

std::string Report::render() const {
    std::vector<const CheckResult*> sorted;
    sorted.reserve(checks.size());
    for (const auto& c : checks) sorted.push_back(&c);
    std::stable_sort(sorted.begin(), sorted.end(),
                     [](const CheckResult* a, const CheckResult* b) { return a->name < b->name; });
    std::ostringstream os;
    if (!command.empty()) os << "# " << command << "\n";
    for (const CheckResult* c : sorted) {
        os << "CHECK " << c->name << " " << status_name(c->status);
        if (!c->detail.empty()) os << " " << c->detail;
        os << "\n";
    }
    os << "RESULT " << status_name(overall()) << "\n";
    return os.str();
}

namespace {

std::map<int, int> small_dims(const Quiver& q, int max_dim, std::uint64_t salt) {
    std::map<int, int> alpha;
    std::uint64_t s = salt;
    for (int v : q.vertices()) {
        s = s * 6364136223846793005ULL + 1442695040888963407ULL;
        alpha[v] = 1 + static_cast<int>(s % static_cast<std::uint64_t>(max_dim));
    }
    // unit pairs need equal dims at their endpoints
    for (const auto& [f, g] : q.unit_pairs()) {
        const Arrow& a = q.arrow(f);
        alpha[a.head] = alpha[a.tail];
    }
    return alpha;
}

std::string oracle_note(const OracleParams& p) {
    std::ostringstream os;
    os << "(points=" << p.points << " max_dim=" << p.max_dim << " seed=" << p.seed << ")";
    return os.str();
}

} // namespace

Status element_zero(const Element& x, const OracleParams& params, std::string* detail) {
    Element nf = localize_normal_form(x);
    if (nf.is_zero()) return Status::Proved;
    int deg = 0;
    if (!params.enabled || !nf.homogeneous_degree(&deg) || deg != 0) {
        if (nf.max_grade(LetterKind::Deriv) > 0) return derivation_zero(x, params, detail);
        if (detail) *detail = "nonzero normal form: " + to_display(nf);
        return Status::Fail;
    }
    for (int k = 0; k < params.points; ++k) {
        RepPoint p = random_point(nf.quiver(), small_dims(*nf.quiver(), params.max_dim, params.seed + static_cast<std::uint64_t>(k)),
                                  params.seed + 977u * static_cast<std::uint64_t>(k));
        if (!evaluate_element(nf, p).is_zero()) {
            if (detail) *detail = "nonzero at sample point " + std::to_string(k) + " " + oracle_note(params);
            return Status::Fail;
        }
    }
    if (detail) *detail = "zero at all sample points " + oracle_note(params);
    return Status::Probable;
}

Status element_equal(const Element& x, const Element& y, const OracleParams& params, std::string* detail) {
    return element_zero(x - y, params, detail);
}

Status tensor_zero(const Tensor& t, const OracleParams& params, std::string* detail) {
    Tensor nf = localize_normal_form(t);
    if (nf.is_zero()) return Status::Proved;
    if (!params.enabled) {
        if (detail) *detail = "nonzero normal form";
        return Status::Fail;
    }
    for (const auto& [legs, c] : nf.terms())
        for (const Word& w : legs)
            if (word_degree(w) != 0) {
                if (detail) *detail = "nonzero normal form (graded legs): " + to_display(nf);
                return Status::Fail;
            }
    for (int k = 0; k < params.points; ++k) {
        RepPoint p = random_point(nf.quiver(), small_dims(*nf.quiver(), params.max_dim, params.seed + static_cast<std::uint64_t>(k)),
                                  params.seed + 977u * static_cast<std::uint64_t>(k));
        if (!evaluate_tensor(nf, p).is_zero()) {
            if (detail) *detail = "nonzero at sample point " + std::to_string(k) + " " + oracle_note(params);
            return Status::Fail;
        }
    }
    if (detail) *detail = "zero at all sample points " + oracle_note(params);
    return Status::Probable;
}

Status necklace_zero(const Element& x, const OracleParams& params, std::string* detail) {
    Element nf = necklace_normal_form(x);
    if (nf.is_zero()) return Status::Proved;
    if (!params.enabled) {
        if (detail) *detail = "nonzero necklace normal form: " + to_display(nf);
        return Status::Fail;
    }
    int max_grade = nf.max_grade(LetterKind::Deriv);
    for (int k = 0; k < params.points; ++k) {
        std::uint64_t salt = params.seed + static_cast<std::uint64_t>(k);
        RepPoint p = random_point(nf.quiver(), small_dims(*nf.quiver(), params.max_dim, salt),
                                  params.seed + 977u * static_cast<std::uint64_t>(k));
        std::mt19937_64 rng(salt * 31 + 7);
        for (int grade = 0; grade <= max_grade; ++grade) {
            Element part = nf.grade_part(LetterKind::Deriv, grade);
            if (part.is_zero()) continue;
            if (grade == 0) {
                if (evaluate_element(part, p).trace() != 0) {
                    if (detail) *detail = "nonzero trace at sample point " + std::to_string(k);
                    return Status::Fail;
                }
                continue;
            }
            // trace of the multi-vector applied to random coordinates
            for (int probe = 0; probe < 4; ++probe) {
                std::vector<CoordFn> coords;
                for (int m = 0; m < grade; ++m) {
                    int arrow = static_cast<int>(rng() % static_cast<std::uint64_t>(nf.quiver()->arrow_count()));
                    CoordFn f;
                    f.word = Element::arrow(nf.quiver(), arrow);
                    f.u = static_cast<int>(rng() % static_cast<std::uint64_t>(p.total_dim()));
                    f.v = static_cast<int>(rng() % static_cast<std::uint64_t>(p.total_dim()));
                    coords.push_back(f);
                }
                Rat traced;
                for (int i = 0; i < p.total_dim(); ++i)
                    traced += evaluate_polyvector_action(part, i, i, coords, p);
                if (traced != 0) {
                    if (detail) *detail = "nonzero traced action at sample point " + std::to_string(k);
                    return Status::Fail;
                }
            }
        }
    }
    if (detail) *detail = "zero class at all sample points " + oracle_note(params);
    return Status::Probable;
}

Status derivation_zero(const Element& x, const OracleParams& params, std::string* detail) {
    Element nf = localize_normal_form(x);
    if (nf.is_zero()) return Status::Proved;
    int g = 0;
    if (!nf.homogeneous_grade(LetterKind::Deriv, &g) || g != 1) {
        if (detail) *detail = "nonzero normal form: " + to_display(nf);
        return Status::Fail;
    }
    if (!params.enabled) {
        if (detail) *detail = "nonzero normal form: " + to_display(nf);
        return Status::Fail;
    }
    for (const Element& gen : algebra_generators(nf.quiver())) {
        Tensor v = apply_double_derivation(nf, gen);
        std::string sub;
        Status s = tensor_zero(v, params, &sub);
        if (s == Status::Fail) {
            if (detail) *detail = "nonzero on generator: " + sub;
            return Status::Fail;
        }
    }
    if (detail) *detail = "zero on all generators " + oracle_note(params);
    return Status::Probable;
}

namespace {

// Generator-level double-bracket axioms: antisymmetry (including the
// diagonal) and B-linearity. A table that violates them is reported FAIL
// before any Jacobi computation.
void check_table_axioms(const DoubleBracketTable& T, Report& rep) {
    const QuiverPtr& q = T.quiver();
    Status s = Status::Proved;
    std::string witness;
    for (int a = 0; a < q->arrow_count() && witness.empty(); ++a)
        for (int b = 0; b < q->arrow_count() && witness.empty(); ++b) {
            Tensor v = T.generator_value(a, b);
            Tensor flipped = apply_permutation(Permutation::cycle(2, {1, 2}), T.generator_value(b, a), false);
            if (!(v + flipped).is_zero()) {
                s = Status::Fail;
                witness = "antisymmetry violated on (" + q->arrow(a).id + ", " + q->arrow(b).id + ")";
            }
        }
    rep.add("generator-antisymmetry", s, witness);
}

} // namespace

Report check_double_poisson(const DoubleBracketTable& T, const OracleParams& params) {
    Report rep;
    rep.command = "check double-poisson";
    auto gens = algebra_generators(T.quiver());
    if (gens.empty()) {
        rep.add("double-jacobi", Status::Proved, "vacuous (no generators)");
        return rep;
    }
    check_table_axioms(T, rep);
    Status all = Status::Proved;
    std::string witness;
    for (size_t i = 0; i < gens.size(); ++i)
        for (size_t j = 0; j < gens.size(); ++j)
            for (size_t k = 0; k < gens.size(); ++k) {
                Tensor r = triple_bracket(T, gens[i], gens[j], gens[k]);
                std::string sub;
                Status s = tensor_zero(r, params, &sub);
                if (s == Status::Fail && witness.empty())
                    witness = "triple (" + to_display(gens[i]) + ", " + to_display(gens[j]) + ", " +
                              to_display(gens[k]) + "): " + sub;
                all = worse(all, s);
            }
    rep.add("double-jacobi", all, all == Status::Fail ? witness : "");
    return rep;
}

Report check_quasi_poisson(const DoubleBracketTable& T, const OracleParams& params) {
    Report rep;
    rep.command = "check quasi-poisson";
    const QuiverPtr& q = T.quiver();
    auto gens = algebra_generators(q);
    std::vector<Element> e3;
    for (int v : q->vertices()) {
        Element E = gauge_element(q, v);
        e3.push_back(multiply(E, multiply(E, E)));
    }
    Status all = Status::Proved;
    std::string witness;
    for (size_t i = 0; i < gens.size(); ++i)
        for (size_t j = 0; j < gens.size(); ++j)
            for (size_t k = 0; k < gens.size(); ++k) {
                Tensor lhs = triple_bracket(T, gens[i], gens[j], gens[k]);
                Tensor rhs(q, 3);
                for (const Element& cube : e3)
                    rhs += bracket_from_polyvector(cube, {gens[i], gens[j], gens[k]});
                rhs *= Rat(1, 12);
                std::string sub;
                Status s = tensor_zero(lhs - rhs, params, &sub);
                if (s == Status::Fail && witness.empty())
                    witness = "triple (" + to_display(gens[i]) + ", " + to_display(gens[j]) + ", " +
                              to_display(gens[k]) + "): " + sub;
                all = worse(all, s);
            }
    rep.add("quasi-jacobi", all, all == Status::Fail ? witness : "");
    return rep;
}

Report check_loday(const DoubleBracketTable& T, const std::vector<std::array<Element, 3>>& samples,
                   const OracleParams& params) {
    Report rep;
    rep.command = "check loday";
    Status all = Status::Proved;
    std::string witness;
    int idx = 0;
    for (const auto& [a, b, c] : samples) {
        Element lhs = single_bracket(T, a, single_bracket(T, b, c));
        Element rhs = single_bracket(T, single_bracket(T, a, b), c) +
                      single_bracket(T, b, single_bracket(T, a, c));
        std::string sub;
        Status s = element_zero(lhs - rhs, params, &sub);
        if (s == Status::Fail && witness.empty())
            witness = "sample " + std::to_string(idx) + ": " + sub;
        all = worse(all, s);
        ++idx;
    }
    rep.add("loday-identity", all, all == Status::Fail ? witness : "");
    return rep;
}

Report check_moment(const Element& P, const Element& m, MomentKind kind, const OracleParams& params) {
    Report rep;
    rep.command = "check moment";
    const QuiverPtr& q = P.quiver();
    Element sum(q);
    for (int v : q->vertices()) sum += right_idem(left_idem(m, v), v);
    if (!(sum == m)) {
        rep.add("moment-decomposition", Status::Error, "moment does not decompose over vertices");
        return rep;
    }
    for (int v : q->vertices()) {
        Element mi = right_idem(left_idem(m, v), v);
        Element res = moment_residual(P, mi, v, kind);
        std::string sub;
        Status s = derivation_zero(res, params, &sub);
        rep.add("moment-vertex-" + std::to_string(v), s, s == Status::Proved ? "" : sub);
    }
    return rep;
}

Report check_moment(const HamiltonianStructure& s, const OracleParams& params) {
    return check_moment(s.P, s.moment, s.kind, params);
}

Report check_structure_quasi(const HamiltonianStructure& s, const OracleParams& params) {
    Report rep;
    rep.command = "check structure quasi";
    const QuiverPtr& q = s.quiver;
    Element pp = schouten_single(s.P, s.P);
    Element rhs(q);
    for (int v : q->vertices()) {
        Element E = gauge_element(q, v);
        rhs += multiply(E, multiply(E, E));
    }
    rhs *= Rat(1, 6);
    std::string sub;
    Status st = necklace_zero(pp - rhs, params, &sub);
    rep.add("pp-equals-sixth-gauge-cubes", st, st == Status::Proved ? "" : sub);

    DoubleBracketTable T = s.induced_table();
    Report bracket_rep = check_quasi_poisson(T, params);
    for (auto& c : bracket_rep.checks) rep.checks.push_back(c);
    return rep;
}

Report quasi_structures_eval(const HamiltonianStructure& s, const RepPoint& p) {
    Report rep;
    rep.command = "rep check structure";
    const QuiverPtr& q = s.quiver;
    int n = p.total_dim();
    DoubleBracketTable T = s.induced_table();

    if (s.kind == MomentKind::Additive) {
        // {mu_{p,ij}, a_uv} = [X(a), f_ji]_uv for phi(i)=phi(j)=p
        bool ok = true;
        for (int vert : q->vertices()) {
            Element mu = s.moment_component(vert);
            for (int arrow = 0; arrow < q->arrow_count(); ++arrow) {
                Element a = Element::arrow(q, arrow);
                Tensor br = evaluate_double_bracket(T, mu, a);
                Mat Xa = evaluate_element(a, p);
                for (int i = 0; i < n && ok; ++i) {
                    if (p.dims().phi(i) != vert) continue;
                    for (int j = 0; j < n && ok; ++j) {
                        if (p.dims().phi(j) != vert) continue;
                        for (int u = 0; u < n; ++u)
                            for (int v = 0; v < n; ++v) {
                                Rat lhs;
                                for (const auto& [legs, c] : br.terms()) {
                                    Mat m1 = evaluate_element(Element::single(q, legs[0]), p);
                                    Mat m2 = evaluate_element(Element::single(q, legs[1]), p);
                                    lhs += c * m1.at(u, j) * m2.at(i, v);
                                }
                                // [X(a), f_ji]_{uv} = X(a)_{uj} delta_{iv} - delta_{uj} X(a)_{iv}
                                Rat rhs = Xa.at(u, j) * Rat(i == v ? 1 : 0) - Rat(u == j ? 1 : 0) * Xa.at(i, v);
                                if (lhs != rhs) ok = false;
                            }
                    }
                }
            }
        }
        rep.add("additive-moment-on-rep", ok ? Status::Proved : Status::Fail,
                ok ? "exact" : "identity violated");
        return rep;
    }

    // multiplicative: X(Phi) invertible and
    // {Phi_{q,uv}, a_rs} = 1/2 ((Phi E + E Phi)(a))'_{rv} (...)''_{us}
    Mat XPhi = evaluate_element(s.moment, p);
    bool invertible = mat_inverse(XPhi).has_value();
    rep.add("moment-matrix-invertible", invertible ? Status::Proved : Status::Fail);

    bool ok = true;
    for (int vert : q->vertices()) {
        Element phi = s.moment_component(vert);
        Element E = gauge_element(q, vert);
        Element half = Rat(1, 2) * (multiply(phi, E) + multiply(E, phi));
        for (int arrow = 0; arrow < q->arrow_count() && ok; ++arrow) {
            Element a = Element::arrow(q, arrow);
            Tensor lhs_t = evaluate_double_bracket(T, phi, a);
            Tensor rhs_t = apply_double_derivation(half, a);
            Arr lhs = evaluate_tensor(lhs_t, p);
            Arr rhs = evaluate_tensor(rhs_t, p);
            if (!(lhs == rhs)) ok = false;
        }
    }
    rep.add("multiplicative-moment-on-rep", ok ? Status::Proved : Status::Fail,
            ok ? "exact" : "identity violated");
    return rep;
}

} // namespace qp
