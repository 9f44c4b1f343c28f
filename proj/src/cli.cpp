#include "qp/cli.hpp"

#include <CLI11.hpp>
#include <iostream>
#include <random>

#include "qp/forms.hpp"
#include "qp/fusion.hpp"
#include "qp/io.hpp"

namespace qp {

namespace {

std::map<int, int> parse_dims(const QuiverPtr& q, const std::string& csv) {
    std::map<int, int> alpha;
    std::stringstream ss(csv);
    std::string item;
    size_t k = 0;
    while (std::getline(ss, item, ',')) {
        if (k >= q->vertices().size()) throw std::runtime_error("too many dimensions for the quiver");
        alpha[q->vertices()[k]] = std::stoi(item);
        ++k;
    }
    if (k != q->vertices().size()) throw std::runtime_error("dimension count does not match vertex count");
    return alpha;
}

std::vector<int> parse_order(const QuiverPtr& q, const std::string& csv) {
    std::vector<int> order;
    if (csv.empty()) {
        for (int i = 0; i < q->arrow_count(); ++i) order.push_back(i);
        return order;
    }
    std::stringstream ss(csv);
    std::string item;
    while (std::getline(ss, item, ',')) {
        int i = q->arrow_index(item);
        if (i < 0) throw std::runtime_error("order references unknown arrow " + item);
        order.push_back(i);
    }
    return order;
}

HamiltonianStructure builtin_structure(const std::string& name, const QuiverPtr& q) {
    if (name == "one-pair") return one_pair_quasi();
    if (name == "hamiltonian") {
        if (!q) throw std::runtime_error("--builtin hamiltonian needs --quiver");
        return standard_hamiltonian(q);
    }
    if (name == "quasi-general") {
        if (!q) throw std::runtime_error("--builtin quasi-general needs --quiver");
        std::vector<int> order;
        for (int i = 0; i < q->arrow_count(); ++i) order.push_back(i);
        return general_quasi(q, order);
    }
    throw std::runtime_error("unknown builtin structure '" + name + "'");
}

std::vector<std::array<Element, 3>> random_word_triples(const QuiverPtr& q, int count,
                                                        std::uint64_t seed, int max_len) {
    std::vector<std::array<Element, 3>> out;
    std::mt19937_64 rng(seed);
    auto random_word = [&]() {
        for (int tries = 0; tries < 64; ++tries) {
            int len = 1 + static_cast<int>(rng() % static_cast<std::uint64_t>(max_len));
            Word w;
            int at = -1;
            for (int k = 0; k < len; ++k) {
                std::vector<int> options;
                for (int i = 0; i < q->arrow_count(); ++i)
                    if (at < 0 || q->arrow(i).tail == at) options.push_back(i);
                if (options.empty()) break;
                int pick = options[rng() % options.size()];
                w.letters.push_back(Letter{LetterKind::Arrow, pick});
                at = q->arrow(pick).head;
            }
            if (static_cast<int>(w.letters.size()) == len) return Element::single(q, w);
        }
        return Element::idempotent(q, q->vertices().front());
    };
    for (int k = 0; k < count; ++k) out.push_back({random_word(), random_word(), random_word()});
    return out;
}

struct CliOptions {
    std::string quiver_file, structure_file, bracket_file, out_file;
    std::string builtin;
    std::string dims = "1";
    std::string order;
    std::uint64_t seed = 1;
    bool oracle_fallback = true;
    int loday_samples = 16;
};

int emit(const Report& rep, std::ostream& out) {
    out << rep.render();
    return rep.exit_code();
}

} // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"exact double (quasi-)Poisson calculus on quiver path algebras"};
    app.require_subcommand(1);
    CliOptions opt;

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--quiver", opt.quiver_file, "quiver definition file (JSON)");
        cmd->add_option("--structure", opt.structure_file, "structure file (JSON)");
        cmd->add_option("--bracket", opt.bracket_file, "bracket table file (JSON)");
        cmd->add_option("--builtin", opt.builtin, "builtin structure: hamiltonian | one-pair | quasi-general");
        cmd->add_option("--dims", opt.dims, "dimension vector, comma separated");
        cmd->add_option("--seed", opt.seed, "random seed");
        cmd->add_option("--order", opt.order, "arrow ordering, comma separated ids");
        cmd->add_option("--out", opt.out_file, "output file");
        cmd->add_option("--oracle-fallback", opt.oracle_fallback,
                        "fall back to representation-space sampling for undecided equalities");
    };

    auto* build = app.add_subcommand("build", "construct a named structure and write it out");
    std::string build_what;
    build->add_option("what", build_what, "hamiltonian | quasi-one-pair | quasi-general | relation")->required();
    std::string lambda_csv, qvals_csv;
    build->add_option("--lambda", lambda_csv, "vertex scalars for the additive relation");
    build->add_option("--q", qvals_csv, "vertex scalars for the multiplicative relation");
    add_common(build);

    auto* verify = app.add_subcommand("verify", "run a verification job");
    std::string verify_what;
    verify->add_option("what", verify_what,
                       "double-poisson | quasi-poisson | moment | loday | bisymplectic")->required();
    verify->add_option("--samples", opt.loday_samples, "sample count for loday");
    add_common(verify);

    auto* fuse = app.add_subcommand("fuse", "fuse two vertices of a structure");
    std::vector<int> merge;
    fuse->add_option("--merge", merge, "two vertex ids to merge")->expected(2);
    add_common(fuse);

    auto* rep_cmd = app.add_subcommand("rep", "representation-space evaluation and checks");
    std::string rep_what, rep_expr, rep_check = "jacobi";
    rep_cmd->add_option("what", rep_what, "eval | check")->required();
    rep_cmd->add_option("--expr", rep_expr, "element expression to evaluate");
    rep_cmd->add_option("--check", rep_check, "jacobi | moment | trace");
    add_common(rep_cmd);

    auto* necklace_cmd = app.add_subcommand("necklace", "necklace bracket of two closed words");
    std::string nx, ny;
    necklace_cmd->add_option("x", nx, "first word expression")->required();
    necklace_cmd->add_option("y", ny, "second word expression")->required();
    add_common(necklace_cmd);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e, out, err);
        return code == 0 ? 0 : 2;
    }

    try {
        QuiverPtr q;
        if (!opt.quiver_file.empty()) q = load_quiver(opt.quiver_file);
        OracleParams oracle;
        oracle.enabled = opt.oracle_fallback;
        oracle.seed = opt.seed;

        if (build->parsed()) {
            HamiltonianStructure s;
            if (build_what == "hamiltonian") s = standard_hamiltonian(q);
            else if (build_what == "quasi-one-pair") s = one_pair_quasi();
            else if (build_what == "quasi-general") s = general_quasi(q, parse_order(q, opt.order));
            else if (build_what == "relation") {
                std::map<int, Rat> vals;
                size_t k = 0;
                std::string csv = lambda_csv.empty() ? qvals_csv : lambda_csv;
                std::stringstream ss(csv);
                std::string item;
                while (std::getline(ss, item, ',')) {
                    Rat r(item);
                    r.canonicalize();
                    vals[q->vertices().at(k++)] = r;
                }
                Element rel = lambda_csv.empty()
                                  ? multiplicative_relation(q, vals, parse_order(q, opt.order))
                                  : preprojective_relation(q, vals);
                std::string text = serialize(rel) + "\n";
                if (opt.out_file.empty()) out << text;
                else write_file(opt.out_file, text);
                return 0;
            } else {
                err << "unknown build target '" << build_what << "'\n";
                return 2;
            }
            std::string text = serialize_structure_json(s);
            if (opt.out_file.empty()) out << text;
            else write_file(opt.out_file, text);
            return 0;
        }

        if (verify->parsed()) {
            Report rep;
            if (verify_what == "double-poisson") {
                DoubleBracketTable T = !opt.bracket_file.empty()
                                           ? load_bracket(opt.bracket_file)
                                           : (!opt.structure_file.empty()
                                                  ? load_structure(opt.structure_file).induced_table()
                                                  : builtin_structure(opt.builtin, q).induced_table());
                rep = check_double_poisson(T, oracle);
            } else if (verify_what == "quasi-poisson") {
                HamiltonianStructure s = !opt.structure_file.empty() ? load_structure(opt.structure_file)
                                                                     : builtin_structure(opt.builtin, q);
                rep = check_structure_quasi(s, oracle);
            } else if (verify_what == "moment") {
                HamiltonianStructure s = !opt.structure_file.empty() ? load_structure(opt.structure_file)
                                                                     : builtin_structure(opt.builtin, q);
                rep = check_moment(s, oracle);
            } else if (verify_what == "loday") {
                DoubleBracketTable T = !opt.bracket_file.empty()
                                           ? load_bracket(opt.bracket_file)
                                           : (!opt.structure_file.empty()
                                                  ? load_structure(opt.structure_file).induced_table()
                                                  : builtin_structure(opt.builtin, q).induced_table());
                auto samples = random_word_triples(T.quiver(), opt.loday_samples, opt.seed, 3);
                rep = check_loday(T, samples, oracle);
            } else if (verify_what == "bisymplectic") {
                QuiverPtr qq = q;
                if (!qq) throw std::runtime_error("verify bisymplectic needs --quiver");
                auto result = check_bisymplectic_equivalence(standard_bisymplectic(qq), oracle);
                rep = result.report;
            } else {
                err << "unknown verification '" << verify_what << "'\n";
                return 2;
            }
            rep.command = "verify " + verify_what;
            return emit(rep, out);
        }

        if (fuse->parsed()) {
            if (merge.size() != 2) throw std::runtime_error("fuse needs --merge v w");
            HamiltonianStructure s = !opt.structure_file.empty() ? load_structure(opt.structure_file)
                                                                 : builtin_structure(opt.builtin, q);
            HamiltonianStructure fused = fuse_structure(s, merge[0], merge[1]);
            std::string text = serialize_structure_json(fused);
            if (opt.out_file.empty()) out << text;
            else write_file(opt.out_file, text);
            return 0;
        }

        if (rep_cmd->parsed()) {
            if (!q) throw std::runtime_error("rep needs --quiver");
            RepPoint p = random_point(q, parse_dims(q, opt.dims), opt.seed);
            if (rep_what == "eval") {
                Element x = parse_element(q, rep_expr);
                Mat m = evaluate_element(localize_normal_form(x), p);
                for (int i = 0; i < m.rows; ++i) {
                    for (int j = 0; j < m.cols; ++j) out << (j ? " " : "") << to_string(m.at(i, j));
                    out << "\n";
                }
                return 0;
            }
            if (rep_what == "check") {
                Report rep;
                rep.command = "rep check " + rep_check;
                if (rep_check == "jacobi") {
                    DoubleBracketTable T = !opt.bracket_file.empty()
                                               ? load_bracket(opt.bracket_file)
                                               : (!opt.structure_file.empty()
                                                      ? load_structure(opt.structure_file).induced_table()
                                                      : builtin_structure(opt.builtin, q).induced_table());
                    auto triples = random_word_triples(q, 4, opt.seed, 2);
                    bool identity_ok = true, poisson_ok = true;
                    for (const auto& [a, b, c] : triples) {
                        JacobiResidual r = jacobi_residual(T, a, b, c, p);
                        if (!r.lhs_minus_rhs.is_zero()) identity_ok = false;
                        if (!r.lhs.is_zero()) poisson_ok = false;
                    }
                    rep.add("jacobi-identity", identity_ok ? Status::Proved : Status::Fail,
                            identity_ok ? "exact zero residual" : "nonzero residual");
                    rep.add("jacobi-lhs", poisson_ok ? Status::Proved : Status::Fail,
                            poisson_ok ? "exact zero residual" : "nonzero residual");
                } else if (rep_check == "moment") {
                    HamiltonianStructure s = !opt.structure_file.empty()
                                                 ? load_structure(opt.structure_file)
                                                 : builtin_structure(opt.builtin, q);
                    rep = quasi_structures_eval(s, p);
                    rep.command = "rep check moment";
                } else if (rep_check == "trace") {
                    DoubleBracketTable T = !opt.bracket_file.empty()
                                               ? load_bracket(opt.bracket_file)
                                               : builtin_structure(opt.builtin, q).induced_table();
                    auto triples = random_word_triples(q, 8, opt.seed, 2);
                    bool ok = true;
                    for (const auto& [a, b, c] : triples)
                        if (!trace_check(T, a, b, p)) ok = false;
                    rep.add("trace-compatibility", ok ? Status::Proved : Status::Fail);
                } else {
                    err << "unknown rep check '" << rep_check << "'\n";
                    return 2;
                }
                return emit(rep, out);
            }
            err << "unknown rep action '" << rep_what << "'\n";
            return 2;
        }

        if (necklace_cmd->parsed()) {
            if (!q) throw std::runtime_error("necklace needs --quiver");
            Element x = parse_element(q, nx);
            Element y = parse_element(q, ny);
            out << serialize(necklace_bracket(x, y)) << "\n";
            return 0;
        }
    } catch (const ParseError& e) {
        err << "parse error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}

} // namespace qp
