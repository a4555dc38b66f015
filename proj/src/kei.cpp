#include "keiarith/kei.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <numeric>
#include <set>

#include "json.hpp"

namespace keiarith {

Permutation::Permutation(std::vector<int> img) : image(std::move(img)) {
    std::vector<char> seen(image.size(), 0);
    for (int v : image) {
        if (v < 0 || v >= degree() || seen[static_cast<size_t>(v)])
            throw std::invalid_argument("permutation image is not a bijection");
        seen[static_cast<size_t>(v)] = 1;
    }
}

Permutation Permutation::identity(int m) {
    std::vector<int> img(static_cast<size_t>(m));
    std::iota(img.begin(), img.end(), 0);
    Permutation p;
    p.image = std::move(img);
    return p;
}

bool Permutation::is_identity() const {
    for (int i = 0; i < degree(); ++i)
        if (image[static_cast<size_t>(i)] != i) return false;
    return true;
}

Permutation Permutation::then(const Permutation& next) const {
    Permutation out;
    out.image.resize(image.size());
    for (size_t i = 0; i < image.size(); ++i)
        out.image[i] = next.image[static_cast<size_t>(image[i])];
    return out;
}

Permutation Permutation::inverse() const {
    Permutation out;
    out.image.resize(image.size());
    for (size_t i = 0; i < image.size(); ++i)
        out.image[static_cast<size_t>(image[i])] = static_cast<int>(i);
    return out;
}

PermGroup PermGroup::generated_by(std::vector<Permutation> gens, int degree) {
    std::set<Permutation> closed;
    closed.insert(Permutation::identity(degree));
    std::vector<Permutation> frontier(closed.begin(), closed.end());
    while (!frontier.empty()) {
        std::vector<Permutation> next;
        for (const auto& p : frontier) {
            for (const auto& g : gens) {
                Permutation q = p.then(g);
                if (closed.insert(q).second) next.push_back(std::move(q));
            }
        }
        frontier = std::move(next);
    }
    PermGroup group;
    group.generators = std::move(gens);
    group.elements.assign(closed.begin(), closed.end());
    return group;
}

bool PermGroup::contains(const Permutation& p) const {
    return std::binary_search(elements.begin(), elements.end(), p);
}

KeiTable::KeiTable(int size, std::vector<int> op) : size_(size), op_(std::move(op)) {
    if (size_ < 0) throw std::invalid_argument("negative kei size");
    if (op_.size() != static_cast<size_t>(size_) * static_cast<size_t>(size_))
        throw std::invalid_argument("kei table has wrong shape");
    for (int v : op_)
        if (v < 0 || v >= size_) throw std::invalid_argument("kei table entry out of range");
}

KeiTable KeiTable::trivial(int a) {
    if (a < 0) throw std::invalid_argument("trivial kei size must be >= 0");
    std::vector<int> op(static_cast<size_t>(a) * a);
    for (int x = 0; x < a; ++x)
        for (int y = 0; y < a; ++y) op[static_cast<size_t>(x) * a + y] = y;
    return KeiTable(a, std::move(op));
}

KeiTable KeiTable::joyce() {
    // indices: 0 = x+, 1 = x-, 2 = y
    return KeiTable(3, {0, 1, 2,    // φ_{x+} = id
                        0, 1, 2,    // φ_{x-} = id
                        1, 0, 2});  // φ_y swaps x±
}

KeiTable KeiTable::dihedral(int m) {
    if (m < 3 || m % 2 == 0)
        throw std::invalid_argument("dihedral kei needs odd modulus >= 3");
    std::vector<int> op(static_cast<size_t>(m) * m);
    for (int x = 0; x < m; ++x)
        for (int y = 0; y < m; ++y) op[static_cast<size_t>(x) * m + y] = ((2 * x - y) % m + m) % m;
    return KeiTable(m, std::move(op));
}

Permutation KeiTable::translation(int x) const {
    Permutation p;
    p.image.assign(op_.begin() + static_cast<ptrdiff_t>(x) * size_,
                   op_.begin() + static_cast<ptrdiff_t>(x + 1) * size_);
    return p;
}

std::vector<AxiomViolation> KeiTable::axiom_violations(size_t max_reports) const {
    std::vector<AxiomViolation> out;
    const int m = size_;
    for (int x = 0; x < m && out.size() < max_reports; ++x)
        if (apply(x, x) != x) out.push_back({1, {x, -1, -1}});
    for (int x = 0; x < m && out.size() < max_reports; ++x)
        for (int y = 0; y < m && out.size() < max_reports; ++y)
            if (apply(x, apply(x, y)) != y) out.push_back({2, {x, y, -1}});
    for (int x = 0; x < m && out.size() < max_reports; ++x)
        for (int y = 0; y < m && out.size() < max_reports; ++y)
            for (int z = 0; z < m && out.size() < max_reports; ++z)
                if (apply(x, apply(y, z)) != apply(apply(x, y), apply(x, z)))
                    out.push_back({3, {x, y, z}});
    return out;
}

std::string KeiTable::to_json() const {
    nlohmann::ordered_json j;
    j["size"] = size_;
    auto rows = nlohmann::ordered_json::array();
    for (int x = 0; x < size_; ++x) {
        auto row = nlohmann::ordered_json::array();
        for (int y = 0; y < size_; ++y) row.push_back(apply(x, y));
        rows.push_back(std::move(row));
    }
    j["op"] = std::move(rows);
    return j.dump();
}

KeiTable KeiTable::from_json(std::string_view text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw std::invalid_argument(std::string("bad kei table JSON: ") + e.what());
    }
    if (!j.is_object() || !j.contains("size") || !j.contains("op"))
        throw std::invalid_argument("kei table JSON needs \"size\" and \"op\"");
    int m = j.at("size").get<int>();
    const auto& rows = j.at("op");
    if (!rows.is_array() || rows.size() != static_cast<size_t>(m))
        throw std::invalid_argument("kei table op has wrong number of rows");
    std::vector<int> op;
    op.reserve(static_cast<size_t>(m) * m);
    for (const auto& row : rows) {
        if (!row.is_array() || row.size() != static_cast<size_t>(m))
            throw std::invalid_argument("kei table op row has wrong length");
        for (const auto& v : row) op.push_back(v.get<int>());
    }
    return KeiTable(m, std::move(op));  // range-checks entries
}

std::vector<AxiomViolation> check_kei_axioms(int size, const std::vector<std::vector<int>>& op,
                                             size_t max_reports) {
    if (size < 0) throw std::invalid_argument("negative kei size");
    if (op.size() != static_cast<size_t>(size))
        throw std::invalid_argument("kei table has wrong number of rows");
    std::vector<int> flat;
    flat.reserve(static_cast<size_t>(size) * size);
    for (const auto& row : op) {
        if (row.size() != static_cast<size_t>(size))
            throw std::invalid_argument("kei table row has wrong length");
        for (int v : row) flat.push_back(v);
    }
    KeiTable table(size, std::move(flat));  // throws on out-of-range entries
    return table.axiom_violations(max_reports);
}

KeiTable disjoint_union(const KeiTable& k1, const KeiTable& k2) {
    const int m1 = k1.size(), m2 = k2.size(), m = m1 + m2;
    std::vector<int> op(static_cast<size_t>(m) * m);
    for (int x = 0; x < m; ++x)
        for (int y = 0; y < m; ++y) {
            int v;
            if (x < m1 && y < m1)
                v = k1.apply(x, y);
            else if (x >= m1 && y >= m1)
                v = k2.apply(x - m1, y - m1) + m1;
            else
                v = y;  // cross-block translations act as the identity
            op[static_cast<size_t>(x) * m + y] = v;
        }
    return KeiTable(m, std::move(op));
}

bool is_isomorphic(const KeiTable& k1, const KeiTable& k2) {
    if (k1.size() != k2.size()) return false;
    const int m = k1.size();
    if (m > 8) throw budget_error("isomorphism search guarded to size <= 8");
    if (m == 0) return true;
    std::vector<int> perm(static_cast<size_t>(m));
    std::iota(perm.begin(), perm.end(), 0);
    do {
        bool ok = true;
        for (int x = 0; x < m && ok; ++x)
            for (int y = 0; y < m && ok; ++y)
                if (perm[static_cast<size_t>(k1.apply(x, y))] !=
                    k2.apply(perm[static_cast<size_t>(x)], perm[static_cast<size_t>(y)]))
                    ok = false;
        if (ok) return true;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return false;
}

PermGroup inner_group(const KeiTable& k) {
    std::vector<Permutation> gens;
    gens.reserve(static_cast<size_t>(k.size()));
    for (int x = 0; x < k.size(); ++x) gens.push_back(k.translation(x));
    return PermGroup::generated_by(std::move(gens), k.size());
}

std::vector<std::vector<int>> orbits(const KeiTable& k) {
    const int m = k.size();
    std::vector<int> parent(static_cast<size_t>(m));
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int v) {
        while (parent[static_cast<size_t>(v)] != v) {
            parent[static_cast<size_t>(v)] = parent[static_cast<size_t>(parent[static_cast<size_t>(v)])];
            v = parent[static_cast<size_t>(v)];
        }
        return v;
    };
    // The Inn(k)-orbits are the components under all generators φ_x.
    for (int x = 0; x < m; ++x)
        for (int y = 0; y < m; ++y) {
            int a = find(y), b = find(k.apply(x, y));
            if (a != b) parent[static_cast<size_t>(std::max(a, b))] = std::min(a, b);
        }
    std::vector<std::vector<int>> out;
    std::vector<int> slot(static_cast<size_t>(m), -1);
    for (int v = 0; v < m; ++v) {
        int r = find(v);
        if (slot[static_cast<size_t>(r)] < 0) {
            slot[static_cast<size_t>(r)] = static_cast<int>(out.size());
            out.emplace_back();
        }
        out[static_cast<size_t>(slot[static_cast<size_t>(r)])].push_back(v);
    }
    return out;
}

std::vector<std::vector<int>> sub_keis(const KeiTable& k) {
    const int m = k.size();
    if (m > 16) throw budget_error("sub-kei scan guarded to size <= 16");
    std::vector<std::vector<int>> out;
    for (uint32_t mask = 0; mask < (1u << m); ++mask) {
        bool closed = true;
        for (int x = 0; x < m && closed; ++x) {
            if (!(mask >> x & 1)) continue;
            for (int y = 0; y < m && closed; ++y) {
                if (!(mask >> y & 1)) continue;
                if (!(mask >> k.apply(x, y) & 1)) closed = false;
            }
        }
        if (!closed) continue;
        std::vector<int> subset;
        for (int v = 0; v < m; ++v)
            if (mask >> v & 1) subset.push_back(v);
        out.push_back(std::move(subset));
    }
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
        if (a.size() != b.size()) return a.size() < b.size();
        return a < b;
    });
    return out;
}

namespace {

KeiTable restrict_to(const KeiTable& k, const std::vector<int>& subset) {
    const int m = static_cast<int>(subset.size());
    std::vector<int> index(static_cast<size_t>(k.size()), -1);
    for (int i = 0; i < m; ++i) index[static_cast<size_t>(subset[static_cast<size_t>(i)])] = i;
    std::vector<int> op(static_cast<size_t>(m) * m);
    for (int x = 0; x < m; ++x)
        for (int y = 0; y < m; ++y)
            op[static_cast<size_t>(x) * m + y] = index[static_cast<size_t>(
                k.apply(subset[static_cast<size_t>(x)], subset[static_cast<size_t>(y)]))];
    return KeiTable(m, std::move(op));
}

}  // namespace

int hilbert_degree(const KeiTable& k) {
    int best = 0;  // the empty sub-kei contributes 0 orbits
    for (const auto& subset : sub_keis(k)) {
        if (subset.empty()) continue;
        KeiTable sub = restrict_to(k, subset);
        best = std::max(best, static_cast<int>(orbits(sub).size()));
    }
    return best - 1;
}

long long hom_count(const KeiTable& src, const KeiTable& dst, long long budget) {
    const int ms = src.size(), md = dst.size();
    if (ms == 0) return 1;
    if (md == 0) return 0;
    if (ms > 8) {
        double states = std::pow(static_cast<double>(md), static_cast<double>(ms));
        if (states > static_cast<double>(budget))
            throw budget_error("hom_count search space exceeds budget");
    }
    // Backtracking over images of 0..ms-1; every fixed pair is re-checked as
    // soon as both endpoints are assigned. Node visits count against the
    // budget so a pathological target cannot run away.
    std::vector<int> img(static_cast<size_t>(ms), -1);
    long long count = 0, visits = 0;
    auto consistent = [&](int pos) {
        for (int x = 0; x <= pos; ++x)
            for (int y = 0; y <= pos; ++y) {
                int lhs = img[static_cast<size_t>(src.apply(x, y))];
                if (lhs < 0) continue;
                if (lhs != dst.apply(img[static_cast<size_t>(x)], img[static_cast<size_t>(y)]))
                    return false;
            }
        return true;
    };
    auto rec = [&](auto&& self, int pos) -> void {
        if (pos == ms) {
            ++count;
            return;
        }
        if (++visits > budget) throw budget_error("hom_count search exceeds budget");
        for (int v = 0; v < md; ++v) {
            img[static_cast<size_t>(pos)] = v;
            if (consistent(pos)) self(self, pos + 1);
        }
        img[static_cast<size_t>(pos)] = -1;
    };
    rec(rec, 0);
    return count;
}

namespace {

// Lexicographically least flattened table over all relabelings; used as the
// canonical representative when deduplicating by isomorphism.
std::vector<int> canonical_flat(const KeiTable& k) {
    const int m = k.size();
    std::vector<int> perm(static_cast<size_t>(m));
    std::iota(perm.begin(), perm.end(), 0);
    std::vector<int> best;
    std::vector<int> cur(static_cast<size_t>(m) * m);
    std::vector<int> inv(static_cast<size_t>(m));
    do {
        for (int i = 0; i < m; ++i) inv[static_cast<size_t>(perm[static_cast<size_t>(i)])] = i;
        for (int x = 0; x < m; ++x)
            for (int y = 0; y < m; ++y)
                cur[static_cast<size_t>(x) * m + y] = perm[static_cast<size_t>(
                    k.apply(inv[static_cast<size_t>(x)], inv[static_cast<size_t>(y)]))];
        if (best.empty() || cur < best) best = cur;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return best;
}

}  // namespace

std::vector<KeiTable> enumerate_keis(int m) {
    if (m < 0) throw std::invalid_argument("negative kei size");
    if (m > 4) throw budget_error("kei enumeration guarded to size <= 4");
    if (m == 0) return {KeiTable()};

    // K1 + K2 say each row is an involution fixing its own index, so
    // enumerate rows from the involutions of [0, m) fixing x and filter by K3.
    std::vector<std::vector<int>> involutions_fixing(static_cast<size_t>(m));
    std::vector<int> perm(static_cast<size_t>(m));
    std::iota(perm.begin(), perm.end(), 0);
    std::vector<std::vector<int>> involutions;
    do {
        bool inv = true;
        for (int i = 0; i < m && inv; ++i)
            if (perm[static_cast<size_t>(perm[static_cast<size_t>(i)])] != i) inv = false;
        if (inv) involutions.push_back(perm);
    } while (std::next_permutation(perm.begin(), perm.end()));

    std::vector<std::vector<size_t>> choices(static_cast<size_t>(m));
    for (int x = 0; x < m; ++x)
        for (size_t i = 0; i < involutions.size(); ++i)
            if (involutions[i][static_cast<size_t>(x)] == x) choices[static_cast<size_t>(x)].push_back(i);

    std::set<std::vector<int>> canon_seen;
    std::vector<KeiTable> out;
    std::vector<size_t> pick(static_cast<size_t>(m), 0);
    while (true) {
        std::vector<int> op;
        op.reserve(static_cast<size_t>(m) * m);
        for (int x = 0; x < m; ++x) {
            const auto& row = involutions[choices[static_cast<size_t>(x)][pick[static_cast<size_t>(x)]]];
            op.insert(op.end(), row.begin(), row.end());
        }
        KeiTable k(m, std::move(op));
        if (k.is_kei() && canon_seen.insert(canonical_flat(k)).second) out.push_back(std::move(k));

        int pos = m - 1;
        while (pos >= 0 && pick[static_cast<size_t>(pos)] + 1 == choices[static_cast<size_t>(pos)].size()) {
            pick[static_cast<size_t>(pos)] = 0;
            --pos;
        }
        if (pos < 0) break;
        ++pick[static_cast<size_t>(pos)];
    }
    std::sort(out.begin(), out.end(), [](const KeiTable& a, const KeiTable& b) {
        return canonical_flat(a) < canonical_flat(b);
    });
    return out;
}

KeiExpr KeiExpr::parse(std::string_view text) {
    KeiExpr expr;
    size_t pos = 0;
    auto skip_ws = [&] {
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    };
    auto parse_int = [&]() -> int {
        skip_ws();
        size_t start = pos;
        while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
        if (start == pos) throw std::invalid_argument("kei expression: expected digits");
        int value = 0;
        auto res = std::from_chars(text.data() + start, text.data() + pos, value);
        if (res.ec != std::errc()) throw std::invalid_argument("kei expression: bad number");
        return value;
    };
    auto expect = [&](char c) {
        skip_ws();
        if (pos >= text.size() || text[pos] != c)
            throw std::invalid_argument(std::string("kei expression: expected '") + c + "'");
        ++pos;
    };

    while (true) {
        skip_ws();
        if (pos >= text.size()) throw std::invalid_argument("kei expression: expected atom");
        char c = text[pos];
        if (c == 'T') {
            ++pos;
            expect('(');
            int a = parse_int();
            expect(')');
            expr.atoms.push_back({AtomKind::trivial, a});
        } else if (c == 'J') {
            ++pos;
            expr.atoms.push_back({AtomKind::joyce, 0});
        } else if (c == 'R') {
            ++pos;
            skip_ws();
            if (pos < text.size() && text[pos] == '3') {
                ++pos;
                expr.atoms.push_back({AtomKind::dihedral, 3});
            } else {
                expect('(');
                int mm = parse_int();
                expect(')');
                if (mm < 3 || mm % 2 == 0)
                    throw std::invalid_argument("kei expression: R(m) needs odd m >= 3");
                expr.atoms.push_back({AtomKind::dihedral, mm});
            }
        } else {
            throw std::invalid_argument("kei expression: unknown atom");
        }
        skip_ws();
        if (pos == text.size()) break;
        expect('+');
    }
    return expr;
}

std::string KeiExpr::str() const {
    std::string out;
    for (size_t i = 0; i < atoms.size(); ++i) {
        if (i) out += "+";
        switch (atoms[i].kind) {
            case AtomKind::trivial: out += "T(" + std::to_string(atoms[i].param) + ")"; break;
            case AtomKind::joyce: out += "J"; break;
            case AtomKind::dihedral:
                out += atoms[i].param == 3 ? "R3" : "R(" + std::to_string(atoms[i].param) + ")";
                break;
        }
    }
    return out;
}

KeiTable KeiExpr::realize() const {
    if (realized_size() > 4096) throw budget_error("kei expression realizes beyond the size cap");
    KeiTable acc;
    for (const auto& atom : atoms) {
        KeiTable piece;
        switch (atom.kind) {
            case AtomKind::trivial: piece = KeiTable::trivial(atom.param); break;
            case AtomKind::joyce: piece = KeiTable::joyce(); break;
            case AtomKind::dihedral: piece = KeiTable::dihedral(atom.param); break;
        }
        acc = acc.empty() ? piece : disjoint_union(acc, piece);
    }
    return acc;
}

int KeiExpr::realized_size() const {
    int total = 0;
    for (const auto& atom : atoms) {
        switch (atom.kind) {
            case AtomKind::trivial: total += atom.param; break;
            case AtomKind::joyce: total += 3; break;
            case AtomKind::dihedral: total += atom.param; break;
        }
    }
    return total;
}

}  // namespace keiarith
