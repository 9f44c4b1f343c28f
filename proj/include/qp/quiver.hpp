#pragma once

#include <map>
#include <memory>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace qp {

struct Arrow {
    std::string id;
    int tail = 0; // t(a): the arrow runs t(a) -> h(a)
    int head = 0;
};

// Finite quiver with optional doubling data, localized letters and
// "unit pairs" (pairs of arrows f,g with fg = e_{t(f)}, gf = e_{h(f)},
// used to model the connector idempotents e_12, e_21 of fusion).
class Quiver {
public:
    Quiver(std::vector<int> vertices, std::vector<Arrow> arrows);

    const std::vector<int>& vertices() const { return vertices_; }
    const std::vector<Arrow>& arrows() const { return arrows_; }
    int arrow_count() const { return static_cast<int>(arrows_.size()); }

    bool has_vertex(int v) const { return vertex_pos_.count(v) != 0; }
    int vertex_index(int v) const;

    int arrow_index(const std::string& id) const; // -1 if absent
    const Arrow& arrow(int idx) const { return arrows_.at(static_cast<size_t>(idx)); }

    bool doubled() const { return doubled_; }
    // Index of a* for arrow a (and of a for a*). Only valid when doubled.
    int partner(int idx) const;
    int epsilon(int idx) const; // +1 on Q, -1 on the added opposites

    bool inverted(int idx) const { return inverted_.at(static_cast<size_t>(idx)) != 0; }
    bool any_inverted() const;

    const std::vector<std::pair<int, int>>& unit_pairs() const { return unit_pairs_; }
    // -1 if `idx` is not in a unit pair, else the index of its companion.
    int unit_partner(int idx) const;

    void set_doubling(std::vector<int> partner, std::vector<int> epsilon);
    // Record a single opposite pair without claiming the quiver is doubled
    // (used by ambient constructions that adjoin extra arrows).
    void set_partner_pair(int i, int j);
    void set_inverted(const std::vector<int>& arrow_indices);
    void add_unit_pair(int f, int g);

    bool same_as(const Quiver& other) const; // structural equality

private:
    std::vector<int> vertices_;
    std::vector<Arrow> arrows_;
    std::map<int, int> vertex_pos_;
    std::map<std::string, int> arrow_pos_;
    bool doubled_ = false;
    std::vector<int> partner_;
    std::vector<int> epsilon_;
    std::vector<char> inverted_;
    std::vector<std::pair<int, int>> unit_pairs_;
};

using QuiverPtr = std::shared_ptr<const Quiver>;

QuiverPtr make_quiver(std::vector<int> vertices, std::vector<Arrow> arrows);

// Adjoin an opposite arrow a* for every arrow a, with epsilon = +1 on the
// originals and -1 on the opposites; a* is placed immediately after a in the
// arrow order.
QuiverPtr build_doubled_quiver(const Quiver& q);

// Copy of q with inverse letters for the listed arrows (each needs a partner,
// since the inverted element is e_{t(a)} + a a*).
QuiverPtr with_inverted(const Quiver& q, const std::vector<std::string>& arrow_ids);
QuiverPtr with_all_inverted(const Quiver& q);

struct QuiverError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace qp
