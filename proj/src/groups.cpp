#include "bohrgap/groups.hpp"

#include <algorithm>
#include <cstdlib>
#include <map>
#include <set>
#include <sstream>

namespace bohrgap {

// -------------------------------------------------------------- GroupElem

GroupElem GroupElem::word(Word letters) {
    Word r;
    for (int x : letters) {
        if (x == 0) continue;
        if (!r.empty() && r.back() == -x)
            r.pop_back();
        else
            r.push_back(x);
    }
    GroupElem g;
    g.v_ = std::move(r);
    return g;
}

GroupElem GroupElem::zvec(ZVec v) {
    GroupElem g;
    g.v_ = std::move(v);
    return g;
}

GroupElem GroupElem::perm(Perm p) {
    GroupElem g;
    g.v_ = std::move(p);
    return g;
}

GroupElem GroupElem::operator*(const GroupElem& o) const {
    if (is_word() && o.is_word()) {
        Word w = as_word();
        for (int x : o.as_word()) {
            if (!w.empty() && w.back() == -x)
                w.pop_back();
            else
                w.push_back(x);
        }
        GroupElem g;
        g.v_ = std::move(w);
        return g;
    }
    if (is_zvec() && o.is_zvec()) {
        ZVec a = as_zvec();
        const ZVec& b = o.as_zvec();
        if (a.size() != b.size()) throw DimensionMismatch("GroupElem: Z^d dimension mismatch");
        for (std::size_t i = 0; i < a.size(); ++i) a[i] += b[i];
        return zvec(std::move(a));
    }
    if (is_perm() && o.is_perm()) {
        const Perm& a = as_perm();
        const Perm& b = o.as_perm();
        if (a.size() != b.size()) throw DimensionMismatch("GroupElem: permutation degree mismatch");
        Perm c(a.size());
        for (std::size_t i = 0; i < a.size(); ++i) c[i] = a[static_cast<std::size_t>(b[i])];
        return perm(std::move(c));
    }
    throw DimensionMismatch("GroupElem: mixed variants in product");
}

GroupElem GroupElem::inverse() const {
    if (is_word()) {
        Word w;
        const Word& a = as_word();
        w.reserve(a.size());
        for (auto it = a.rbegin(); it != a.rend(); ++it) w.push_back(-*it);
        GroupElem g;
        g.v_ = std::move(w);
        return g;
    }
    if (is_zvec()) {
        ZVec v = as_zvec();
        for (auto& x : v) x = -x;
        return zvec(std::move(v));
    }
    const Perm& a = as_perm();
    Perm inv(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) inv[static_cast<std::size_t>(a[i])] = static_cast<int>(i);
    return perm(std::move(inv));
}

bool GroupElem::is_identity() const {
    if (is_word()) return as_word().empty();
    if (is_zvec()) {
        for (auto x : as_zvec())
            if (x != 0) return false;
        return true;
    }
    const Perm& a = as_perm();
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i] != static_cast<int>(i)) return false;
    return true;
}

long GroupElem::length() const {
    if (is_word()) return static_cast<long>(as_word().size());
    if (is_zvec()) {
        long s = 0;
        for (auto x : as_zvec()) s += std::llabs(x);
        return s;
    }
    return 0;
}

bool GroupElem::operator<(const GroupElem& o) const {
    if (v_.index() != o.v_.index()) return v_.index() < o.v_.index();
    long la = length(), lb = o.length();
    if (la != lb) return la < lb;
    return v_ < o.v_;
}

std::string GroupElem::to_string() const {
    std::ostringstream out;
    if (is_word()) {
        const Word& w = as_word();
        if (w.empty()) return "e";
        for (std::size_t i = 0; i < w.size(); ++i) {
            if (i) out << ' ';
            int x = w[i];
            out << static_cast<char>('a' + std::abs(x) - 1);
            if (x < 0) out << '\'';
        }
        return out.str();
    }
    if (is_zvec()) {
        out << '(';
        const ZVec& v = as_zvec();
        for (std::size_t i = 0; i < v.size(); ++i) {
            if (i) out << ',';
            out << v[i];
        }
        out << ')';
        return out.str();
    }
    out << '[';
    const Perm& p = as_perm();
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (i) out << ' ';
        out << p[i];
    }
    out << ']';
    return out.str();
}

// ------------------------------------------------------------- spec utils

GroupElem identity_of(const GroupSpec& spec) {
    if (std::holds_alternative<FreeGroup>(spec)) return GroupElem::word({});
    if (const auto* z = std::get_if<ZPow>(&spec))
        return GroupElem::zvec(GroupElem::ZVec(static_cast<std::size_t>(z->dim), 0));
    const auto& pg = std::get<PermGroup>(spec);
    Perm id(static_cast<std::size_t>(pg.degree));
    for (int i = 0; i < pg.degree; ++i) id[static_cast<std::size_t>(i)] = i;
    return GroupElem::perm(std::move(id));
}

std::vector<GroupElem> standard_generators(const GroupSpec& spec) {
    std::vector<GroupElem> gens;
    if (const auto* f = std::get_if<FreeGroup>(&spec)) {
        for (int i = 1; i <= f->rank; ++i) gens.push_back(GroupElem::word({i}));
    } else if (const auto* z = std::get_if<ZPow>(&spec)) {
        for (int i = 0; i < z->dim; ++i) {
            GroupElem::ZVec v(static_cast<std::size_t>(z->dim), 0);
            v[static_cast<std::size_t>(i)] = 1;
            gens.push_back(GroupElem::zvec(std::move(v)));
        }
    } else {
        for (const Perm& p : std::get<PermGroup>(spec).gens) gens.push_back(GroupElem::perm(p));
    }
    return gens;
}

std::vector<GroupElem> symmetric_closure(const std::vector<GroupElem>& gens) {
    std::set<GroupElem> s;
    for (const GroupElem& g : gens) {
        if (g.is_identity()) continue;
        s.insert(g);
        s.insert(g.inverse());
    }
    return {s.begin(), s.end()};
}

std::vector<GroupElem> cayley_ball(const GroupSpec& spec, const std::vector<GroupElem>& gens,
                                   int r, std::size_t cap) {
    std::vector<GroupElem> sym = symmetric_closure(gens);
    std::vector<GroupElem> ball{identity_of(spec)};
    std::set<GroupElem> seen{ball[0]};
    std::vector<GroupElem> frontier = ball;
    for (int level = 1; level <= r; ++level) {
        std::set<GroupElem> next;
        for (const GroupElem& g : frontier)
            for (const GroupElem& h : sym) {
                GroupElem x = h * g;
                if (!seen.count(x)) next.insert(x);
            }
        frontier.assign(next.begin(), next.end());  // sorted: length then lex
        for (const GroupElem& x : frontier) {
            seen.insert(x);
            ball.push_back(x);
            if (ball.size() > cap)
                throw BallTooLarge("cayley_ball: ball exceeds cap " + std::to_string(cap));
        }
        if (frontier.empty()) break;  // finite group saturated
    }
    return ball;
}

// ------------------------------------------------------------- GenMeasure

const Rational* GenMeasure::weight_of(const GroupElem& g) const {
    for (const auto& [h, w] : support)
        if (h == g) return &w;
    return nullptr;
}

Rational GenMeasure::identity_weight() const {
    for (const auto& [h, w] : support)
        if (h.is_identity()) return w;
    return Rational(0);
}

Rational GenMeasure::min_nonidentity_weight() const {
    Rational m(-1);
    for (const auto& [h, w] : support) {
        if (h.is_identity()) continue;
        if (m < 0 || w < m) m = w;
    }
    return m;
}

std::vector<GroupElem> GenMeasure::support_elems() const {
    std::vector<GroupElem> r;
    r.reserve(support.size());
    for (const auto& [h, w] : support) r.push_back(h);
    return r;
}

std::vector<GroupElem> GenMeasure::generators() const {
    std::vector<GroupElem> r;
    for (const auto& [h, w] : support)
        if (!h.is_identity()) r.push_back(h);
    return r;
}

std::vector<GroupElem> enumerate_perm_group(const PermGroup& spec, std::size_t cap) {
    std::vector<GroupElem> gens = standard_generators(GroupSpec(spec));
    return cayley_ball(GroupSpec(spec), gens, static_cast<int>(cap), cap);
}

GenMeasure validate_measure(const GroupSpec& spec, const GenMeasure& mu) {
    bool has_identity = false;
    Rational total(0);
    for (const auto& [h, w] : mu.support) {
        if (w <= 0) throw NotProbability("measure weight not positive on " + h.to_string());
        total += w;
        if (h.is_identity()) has_identity = true;
        const Rational* winv = mu.weight_of(h.inverse());
        if (!winv || *winv != w)
            throw NotSymmetric("mu(h) != mu(h^-1) for h = " + h.to_string());
    }
    if (!has_identity) throw MissingIdentity();
    if (total != 1) throw NotProbability("weights sum to " + total.get_str() + ", not 1");

    if (const auto* pg = std::get_if<PermGroup>(&spec)) {
        std::size_t order = enumerate_perm_group(*pg).size();
        PermGroup sub{pg->degree, {}};
        for (const auto& [h, w] : mu.support)
            if (!h.is_identity()) sub.gens.push_back(h.as_perm());
        std::size_t closure = sub.gens.empty() ? 1 : enumerate_perm_group(sub).size();
        if (closure != order)
            throw NotGenerating("support closure has order " + std::to_string(closure) +
                                ", group has order " + std::to_string(order));
    } else {
        // For infinite groups the standard generators are required verbatim.
        for (const GroupElem& g : standard_generators(spec))
            if (!mu.weight_of(g))
                throw NotGenerating("support must contain standard generator " + g.to_string());
    }
    return mu;
}

GenMeasure lazy_uniform(const GroupSpec& spec) {
    std::vector<GroupElem> sym = symmetric_closure(standard_generators(spec));
    GenMeasure mu;
    Rational w(1, static_cast<unsigned long>(sym.size() + 1));
    mu.support.emplace_back(identity_of(spec), w);
    for (const GroupElem& g : sym) mu.support.emplace_back(g, w);
    return mu;
}

// ---------------------------------------------------------------- parsing

GroupSpec parse_group_spec(const std::string& text) {
    auto fail = [&] { throw ParseError("bad group spec: " + text); };
    std::size_t c1 = text.find(':');
    if (c1 == std::string::npos) fail();
    std::string kind = text.substr(0, c1);
    if (kind == "free") {
        int k = std::atoi(text.c_str() + c1 + 1);
        if (k < 1) fail();
        return FreeGroup{k};
    }
    if (kind == "z") {
        int d = std::atoi(text.c_str() + c1 + 1);
        if (d < 1) fail();
        return ZPow{d};
    }
    if (kind == "perm") {
        std::size_t c2 = text.find(':', c1 + 1);
        if (c2 == std::string::npos) fail();
        int n = std::atoi(text.substr(c1 + 1, c2 - c1 - 1).c_str());
        if (n < 1) fail();
        PermGroup pg{n, {}};
        // generators in cycle notation, comma separated: (0 1 2),(0 1)
        std::string rest = text.substr(c2 + 1);
        std::size_t pos = 0;
        while ((pos = rest.find('(', pos)) != std::string::npos) {
            std::size_t end = rest.find(')', pos);
            if (end == std::string::npos) fail();
            std::istringstream in(rest.substr(pos + 1, end - pos - 1));
            std::vector<int> cycle;
            int v;
            while (in >> v) cycle.push_back(v);
            Perm p(static_cast<std::size_t>(n));
            for (int i = 0; i < n; ++i) p[static_cast<std::size_t>(i)] = i;
            for (std::size_t i = 0; i < cycle.size(); ++i) {
                int from = cycle[i], to = cycle[(i + 1) % cycle.size()];
                if (from < 0 || from >= n) fail();
                p[static_cast<std::size_t>(from)] = to;
            }
            pg.gens.push_back(std::move(p));
            pos = end + 1;
        }
        if (pg.gens.empty()) fail();
        return pg;
    }
    fail();
    return FreeGroup{1};  // unreachable
}

GroupElem parse_elem(const GroupSpec& spec, const std::string& word) {
    if (word == "e") return identity_of(spec);
    if (const auto* z = std::get_if<ZPow>(&spec)) {
        // "(1,-2)" or word form over a,b,... for low dims
        if (!word.empty() && word.front() == '(') {
            GroupElem::ZVec v;
            std::string inner = word.substr(1, word.size() - 2);
            std::replace(inner.begin(), inner.end(), ',', ' ');
            std::istringstream in(inner);
            long long x;
            while (in >> x) v.push_back(x);
            if (static_cast<int>(v.size()) != z->dim)
                throw ParseError("Z^d element has wrong dimension: " + word);
            return GroupElem::zvec(std::move(v));
        }
        GroupElem::ZVec v(static_cast<std::size_t>(z->dim), 0);
        std::istringstream in(word);
        std::string tok;
        while (in >> tok) {
            bool inv = tok.size() > 1 && tok.back() == '\'';
            int idx = tok[0] - 'a';
            if (idx < 0 || idx >= z->dim) throw ParseError("bad generator letter: " + tok);
            v[static_cast<std::size_t>(idx)] += inv ? -1 : 1;
        }
        return GroupElem::zvec(std::move(v));
    }
    if (std::holds_alternative<FreeGroup>(spec)) {
        int rank = std::get<FreeGroup>(spec).rank;
        GroupElem::Word w;
        std::istringstream in(word);
        std::string tok;
        while (in >> tok) {
            bool inv = tok.size() > 1 && tok.back() == '\'';
            int idx = tok[0] - 'a' + 1;
            if (idx < 1 || idx > rank) throw ParseError("bad generator letter: " + tok);
            w.push_back(inv ? -idx : idx);
        }
        return GroupElem::word(std::move(w));
    }
    // permutation group: "[1 0 2]" image list, or generator names a,b,...
    const auto& pg = std::get<PermGroup>(spec);
    if (!word.empty() && word.front() == '[') {
        std::istringstream in(word.substr(1, word.size() - 2));
        Perm p;
        long v;
        while (in >> v) p.push_back(v);
        if (static_cast<int>(p.size()) != pg.degree)
            throw ParseError("permutation has wrong degree: " + word);
        Perm check(p.size(), -1);
        for (long img : p) {
            if (img < 0 || img >= pg.degree || check[static_cast<std::size_t>(img)] != -1)
                throw ParseError("not a permutation: " + word);
            check[static_cast<std::size_t>(img)] = 0;
        }
        return GroupElem::perm(std::move(p));
    }
    GroupElem acc = identity_of(spec);
    std::istringstream in(word);
    std::string tok;
    while (in >> tok) {
        bool inv = tok.size() > 1 && tok.back() == '\'';
        std::size_t idx = static_cast<std::size_t>(tok[0] - 'a');
        if (idx >= pg.gens.size()) throw ParseError("bad generator letter: " + tok);
        GroupElem g = GroupElem::perm(pg.gens[idx]);
        acc = acc * (inv ? g.inverse() : g);
    }
    return acc;
}

GenMeasure parse_measure(const GroupSpec& spec, const std::string& text) {
    GenMeasure mu;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::size_t ws = line.find_last_of(" \t");
        if (ws == std::string::npos) throw ParseError("bad measure line: " + line);
        std::string elem = line.substr(0, ws);
        Rational w(line.substr(ws + 1));
        w.canonicalize();
        mu.support.emplace_back(parse_elem(spec, elem), w);
    }
    return mu;
}

}  // namespace bohrgap
