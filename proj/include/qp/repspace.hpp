#pragma once

#include <cstdint>
#include <optional>

#include "qp/polyvector.hpp"

namespace qp {

// Dense exact-rational matrix.
struct Mat {
    int rows = 0, cols = 0;
    std::vector<Rat> a;

    Mat() = default;
    Mat(int r, int c) : rows(r), cols(c), a(static_cast<size_t>(r) * static_cast<size_t>(c)) {}
    Rat& at(int i, int j) { return a[static_cast<size_t>(i) * static_cast<size_t>(cols) + static_cast<size_t>(j)]; }
    const Rat& at(int i, int j) const {
        return a[static_cast<size_t>(i) * static_cast<size_t>(cols) + static_cast<size_t>(j)];
    }
    static Mat eye(int n);
    bool is_zero() const;
    Rat trace() const;
    friend Mat operator*(const Mat& x, const Mat& y);
    friend Mat operator+(Mat x, const Mat& y);
    friend Mat operator-(Mat x, const Mat& y);
    friend Mat operator*(const Rat& c, Mat x);
    friend bool operator==(const Mat&, const Mat&) = default;
};

// Gaussian elimination; nullopt when singular.
std::optional<Mat> mat_inverse(const Mat& m);
// Solve M c = rhs exactly (least constraints: returns any solution), nullopt
// when inconsistent.
std::optional<std::vector<Rat>> solve_linear(const Mat& m, const std::vector<Rat>& rhs);

struct DimVector {
    std::vector<int> vertices; // quiver vertex order
    std::map<int, int> alpha;  // vertex -> positive dimension
    std::vector<int> offset_of_vertex;
    std::vector<int> block_of; // phi: global index -> vertex
    int total = 0;

    static DimVector make(const Quiver& q, const std::map<int, int>& alpha);
    int offset(const Quiver& q, int vertex) const;
    int dim(int vertex) const { return alpha.at(vertex); }
    int phi(int p) const { return block_of.at(static_cast<size_t>(p)); }
};

// Exact rational matrices for every arrow (block t(a) x h(a) of an
// |alpha| x |alpha| matrix), inverse blocks for every inverse letter, and
// identity rectangles for connector unit pairs.
class RepPoint {
public:
    RepPoint(QuiverPtr q, DimVector dims) : quiver_(std::move(q)), dims_(std::move(dims)) {}

    const QuiverPtr& quiver() const { return quiver_; }
    const DimVector& dims() const { return dims_; }
    int total_dim() const { return dims_.total; }

    const Mat& arrow_matrix(int idx) const { return arrow_mats_.at(static_cast<size_t>(idx)); }
    void set_arrow_matrix(int idx, Mat m);
    // Computes every required inverse block; false when one is singular.
    bool finalize();

    Mat letter_matrix(const Letter& l) const;
    Mat idem_matrix(int vertex) const;
    Mat unit_matrix() const { return Mat::eye(dims_.total); }

private:
    QuiverPtr quiver_;
    DimVector dims_;
    std::vector<Mat> arrow_mats_;
    std::map<int, Mat> inverse_mats_;
};

struct RepError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Deterministic in (alpha, seed); entries have |numerator|, denominator <= 7;
// retries with derived seeds while some 1 + X_a X_{a*} is singular, failing
// after 100 attempts.
RepPoint random_point(const QuiverPtr& q, const std::map<int, int>& alpha, std::uint64_t seed);

// Exact matrix of a degree-0 element.
Mat evaluate_element(const Element& x, const RepPoint& p);

// Multi-index rational arrays for the induced brackets.
struct Arr {
    std::vector<int> shape;
    std::vector<Rat> a;
    explicit Arr(std::vector<int> s);
    Rat& at(std::initializer_list<int> idx);
    const Rat& at(std::initializer_list<int> idx) const;
    bool is_zero() const;
    friend Arr operator-(Arr x, const Arr& y);
    friend bool operator==(const Arr&, const Arr&) = default;
};

// B[i,j,u,v] = sum {{a,b}}'_{uj} {{a,b}}''_{iv}  (Eq-style induced bracket).
Arr induced_bracket_tensor(const DoubleBracketTable& T, const Element& a, const Element& b,
                           const RepPoint& p);

// Left side of the representation-space Jacobi identity and LHS - RHS
// (the latter vanishes identically, the former iff T is double Poisson).
struct JacobiResidual {
    Arr lhs;
    Arr lhs_minus_rhs;
};
JacobiResidual jacobi_residual(const DoubleBracketTable& T, const Element& a, const Element& b,
                               const Element& c, const RepPoint& p);

// Value of the indexed n-vector field X(P)_{ij} on n coordinate functions
// (word, row, col), antisymmetrized wedge application.
struct CoordFn {
    Element word;
    int u = 0, v = 0;
};
Rat evaluate_polyvector_action(const Element& P, int i, int j, const std::vector<CoordFn>& coords,
                               const RepPoint& p);

// {tr a, tr b} from the induced tensor vs tr {a,b}; exact equality report.
bool trace_check(const DoubleBracketTable& T, const Element& a, const Element& b, const RepPoint& p,
                 Rat* lhs = nullptr, Rat* rhs = nullptr);
// Schouten version on grade-1 poly-vectors: both sides act on a coordinate.
bool trace_check_schouten(const Element& P, const Element& Q, const CoordFn& f, const RepPoint& p);

// Evaluate a tensor as the flat array of products of leg matrices; used as
// the probabilistic equality oracle for bracket values.
Arr evaluate_tensor(const Tensor& t, const RepPoint& p);

} // namespace qp
