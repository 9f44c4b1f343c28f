#include "qp/quiver.hpp"

#include <algorithm>
#include <set>

namespace qp {

Quiver::Quiver(std::vector<int> vertices, std::vector<Arrow> arrows)
    : vertices_(std::move(vertices)), arrows_(std::move(arrows)) {
    for (size_t i = 0; i < vertices_.size(); ++i) {
        if (!vertex_pos_.emplace(vertices_[i], static_cast<int>(i)).second)
            throw QuiverError("duplicate vertex id " + std::to_string(vertices_[i]));
    }
    for (size_t i = 0; i < arrows_.size(); ++i) {
        const Arrow& a = arrows_[i];
        if (!has_vertex(a.tail) || !has_vertex(a.head))
            throw QuiverError("arrow " + a.id + " references undeclared vertex");
        if (!arrow_pos_.emplace(a.id, static_cast<int>(i)).second)
            throw QuiverError("duplicate arrow id " + a.id);
    }
    partner_.assign(arrows_.size(), -1);
    epsilon_.assign(arrows_.size(), 0);
    inverted_.assign(arrows_.size(), 0);
}

int Quiver::vertex_index(int v) const {
    auto it = vertex_pos_.find(v);
    if (it == vertex_pos_.end()) throw QuiverError("unknown vertex " + std::to_string(v));
    return it->second;
}

int Quiver::arrow_index(const std::string& id) const {
    auto it = arrow_pos_.find(id);
    return it == arrow_pos_.end() ? -1 : it->second;
}

int Quiver::partner(int idx) const {
    int p = partner_.at(static_cast<size_t>(idx));
    if (p < 0) throw QuiverError("arrow " + arrow(idx).id + " has no opposite");
    return p;
}

int Quiver::epsilon(int idx) const {
    if (!doubled_) throw QuiverError("epsilon is only defined on doubled quivers");
    return epsilon_.at(static_cast<size_t>(idx));
}

bool Quiver::any_inverted() const {
    return std::any_of(inverted_.begin(), inverted_.end(), [](char c) { return c != 0; });
}

int Quiver::unit_partner(int idx) const {
    for (const auto& [f, g] : unit_pairs_) {
        if (f == idx) return g;
        if (g == idx) return f;
    }
    return -1;
}

void Quiver::set_doubling(std::vector<int> partner, std::vector<int> epsilon) {
    if (partner.size() != arrows_.size() || epsilon.size() != arrows_.size())
        throw QuiverError("doubling data size mismatch");
    for (size_t i = 0; i < arrows_.size(); ++i) {
        int p = partner[i];
        if (p < 0 || p >= static_cast<int>(arrows_.size()) || partner[static_cast<size_t>(p)] != static_cast<int>(i))
            throw QuiverError("doubling pairs must be involutive");
        const Arrow& a = arrows_[i];
        const Arrow& b = arrows_[static_cast<size_t>(p)];
        if (a.tail != b.head || a.head != b.tail)
            throw QuiverError("opposite of " + a.id + " must reverse head and tail");
        if (epsilon[i] * epsilon[static_cast<size_t>(p)] != -1)
            throw QuiverError("epsilon must be +1 on one arrow of each pair and -1 on the other");
    }
    doubled_ = true;
    partner_ = std::move(partner);
    epsilon_ = std::move(epsilon);
}

void Quiver::set_partner_pair(int i, int j) {
    const Arrow& a = arrow(i);
    const Arrow& b = arrow(j);
    if (a.tail != b.head || a.head != b.tail)
        throw QuiverError("partner arrows must reverse head and tail");
    partner_.at(static_cast<size_t>(i)) = j;
    partner_.at(static_cast<size_t>(j)) = i;
}

void Quiver::set_inverted(const std::vector<int>& arrow_indices) {
    for (int idx : arrow_indices) {
        if (idx < 0 || idx >= arrow_count()) throw QuiverError("invert: bad arrow index");
        partner(idx); // throws when there is no a*; (e + a a*) needs one
        inverted_[static_cast<size_t>(idx)] = 1;
    }
}

void Quiver::add_unit_pair(int f, int g) {
    const Arrow& af = arrow(f);
    const Arrow& ag = arrow(g);
    if (af.tail != ag.head || af.head != ag.tail)
        throw QuiverError("unit pair must consist of mutually opposite arrows");
    unit_pairs_.emplace_back(f, g);
}

bool Quiver::same_as(const Quiver& other) const {
    if (vertices_ != other.vertices_) return false;
    if (arrows_.size() != other.arrows_.size()) return false;
    for (size_t i = 0; i < arrows_.size(); ++i) {
        if (arrows_[i].id != other.arrows_[i].id || arrows_[i].tail != other.arrows_[i].tail ||
            arrows_[i].head != other.arrows_[i].head)
            return false;
    }
    return doubled_ == other.doubled_ && partner_ == other.partner_ && epsilon_ == other.epsilon_ &&
           inverted_ == other.inverted_ && unit_pairs_ == other.unit_pairs_;
}

QuiverPtr make_quiver(std::vector<int> vertices, std::vector<Arrow> arrows) {
    return std::make_shared<Quiver>(std::move(vertices), std::move(arrows));
}

QuiverPtr build_doubled_quiver(const Quiver& q) {
    if (q.doubled()) throw QuiverError("quiver is already doubled");
    std::vector<Arrow> arrows;
    arrows.reserve(q.arrows().size() * 2);
    std::set<std::string> ids;
    for (const Arrow& a : q.arrows()) ids.insert(a.id);
    std::vector<int> partner, epsilon;
    for (const Arrow& a : q.arrows()) {
        std::string star = a.id + "*";
        if (ids.count(star)) throw QuiverError("doubling would duplicate arrow id " + star);
        int i = static_cast<int>(arrows.size());
        arrows.push_back(a);
        arrows.push_back(Arrow{star, a.head, a.tail});
        partner.push_back(i + 1);
        partner.push_back(i);
        epsilon.push_back(1);
        epsilon.push_back(-1);
    }
    auto out = std::make_shared<Quiver>(q.vertices(), std::move(arrows));
    out->set_doubling(std::move(partner), std::move(epsilon));
    return out;
}

QuiverPtr with_inverted(const Quiver& q, const std::vector<std::string>& arrow_ids) {
    auto out = std::make_shared<Quiver>(q);
    std::vector<int> idx;
    for (const auto& id : arrow_ids) {
        int i = q.arrow_index(id);
        if (i < 0) throw QuiverError("invert: unknown arrow " + id);
        idx.push_back(i);
    }
    out->set_inverted(idx);
    return out;
}

QuiverPtr with_all_inverted(const Quiver& q) {
    auto out = std::make_shared<Quiver>(q);
    std::vector<int> idx(static_cast<size_t>(q.arrow_count()));
    for (int i = 0; i < q.arrow_count(); ++i) idx[static_cast<size_t>(i)] = i;
    out->set_inverted(idx);
    return out;
}

} // namespace qp
