#pragma once

#include "qp/repspace.hpp"
#include "qp/structures.hpp"

namespace qp {

enum class Status { Proved, Probable, Fail, Error };
const char* status_name(Status s);
Status worse(Status a, Status b);

struct CheckResult {
    std::string name;
    Status status = Status::Proved;
    std::string detail;
};

struct Report {
    std::string command;
    std::vector<CheckResult> checks;

    void add(std::string name, Status s, std::string detail = "");
    Status overall() const;
    bool ok() const { return overall() == Status::Proved || overall() == Status::Probable; }
    int exit_code() const;
    std::string render() const; // canonical: sorted by check name
};

// Sampling parameters of the representation-space oracle.
struct OracleParams {
    bool enabled = true;
    int points = 8;
    int max_dim = 3;
    std::uint64_t seed = 1;
};

// Layered equality: localize normal form first (PROVED), then exact
// evaluation at random points (PROBABLE / FAIL with a witness).
Status element_zero(const Element& x, const OracleParams& params, std::string* detail = nullptr);
Status tensor_zero(const Tensor& t, const OracleParams& params, std::string* detail = nullptr);
// Modulo graded commutators; evaluation falls back to traced actions.
Status necklace_zero(const Element& x, const OracleParams& params, std::string* detail = nullptr);
// Grade-1 poly-vector zero test (element level in D_{A/B}); evaluation
// applies the double derivation to all generators.
Status derivation_zero(const Element& x, const OracleParams& params, std::string* detail = nullptr);

Status element_equal(const Element& x, const Element& y, const OracleParams& params,
                     std::string* detail = nullptr);

// The double Jacobi identity on all generator triples.
Report check_double_poisson(const DoubleBracketTable& T, const OracleParams& params = {});

// {{a,b,c}} = 1/12 sum_i {{a,b,c}}_{E_i^3} on all generator triples.
Report check_quasi_poisson(const DoubleBracketTable& T, const OracleParams& params = {});

// {a,{b,c}} = {{a,b},c} + {b,{a,c}} on the sample triples.
Report check_loday(const DoubleBracketTable& T,
                   const std::vector<std::array<Element, 3>>& samples,
                   const OracleParams& params = {});

// {P, m_i} = -E_i  /  {P, m_i} = -1/2 (E_i m_i + m_i E_i), per vertex.
Report check_moment(const Element& P, const Element& m, MomentKind kind,
                    const OracleParams& params = {});
Report check_moment(const HamiltonianStructure& s, const OracleParams& params = {});

// {P,P} = 1/6 sum E_i^3 mod commutators (the differential quasi-Poisson
// condition) plus the bracket-level quasi check of the induced table.
Report check_structure_quasi(const HamiltonianStructure& s, const OracleParams& params = {});

// Rep-space verification of a structure (moment identities at a point).
Report quasi_structures_eval(const HamiltonianStructure& s, const RepPoint& p);

} // namespace qp
