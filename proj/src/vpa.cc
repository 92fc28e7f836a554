/* vpa.cc -- machine parsing and exact balanced-word semantics */

#include "vplt/vpa.hh"

#include <algorithm>
#include <sstream>

namespace vplt {

int Vpa::symbol_id(const std::string& token) const {
    for (std::size_t i = 0; i < symbols.size(); ++i)
        if (symbols[i] == token) return static_cast<int>(i);
    return -1;
}

bool Vpa::is_initial(int q) const {
    return std::find(initial.begin(), initial.end(), q) != initial.end();
}

bool Vpa::is_final(int q) const {
    return std::find(finals.begin(), finals.end(), q) != finals.end();
}

bool Vpa::relation_accepts(const Relation& r) const {
    for (int p : initial)
        for (int q : finals)
            if (r.get(p, q)) return true;
    return false;
}

Relation compose(const Relation& r1, const Relation& r2) {
    if (r1.size() != r2.size()) throw std::invalid_argument("compose: dimension mismatch");
    return r1.compose(r2);
}

Relation Vpa::surround(int push_sym, const Relation& inner, int pop_sym) const {
    Relation out(m);
    for (std::size_t g = 0; g < num_stack(); ++g) {
        const Relation& pu = push_rel[push_sym][g];
        const Relation& po = pop_rel[pop_sym][g];
        if (pu.empty() || po.empty()) continue;
        out |= pu.compose(inner).compose(po);
    }
    return out;
}

Relation Vpa::balanced_reach() const {
    Relation b = Relation::identity(m);
    bool changed = true;
    while (changed) {
        Relation next = b;
        for (std::size_t s = 0; s < num_symbols(); ++s)
            if (is_neutral(static_cast<int>(s))) next |= neutral_rel[s];
        next |= b.compose(b);
        for (std::size_t a = 0; a < num_symbols(); ++a) {
            if (!is_push(static_cast<int>(a))) continue;
            for (std::size_t bb = 0; bb < num_symbols(); ++bb) {
                if (!is_pop(static_cast<int>(bb))) continue;
                next |= surround(static_cast<int>(a), b, static_cast<int>(bb));
            }
        }
        changed = (next != b);
        b = next;
    }
    return b;
}

std::size_t Vpa::sigma_diameter() const {
    // Bellman-Ford style relaxation of the minimal balanced-word length
    // between state pairs: identity (0), neutral step (1), concatenation,
    // and push/pop surrounding (+2).
    constexpr std::uint64_t inf = UINT64_MAX;
    std::vector<std::vector<std::uint64_t>> d(m, std::vector<std::uint64_t>(m, inf));
    for (std::size_t p = 0; p < m; ++p) d[p][p] = 0;
    bool changed = true;
    while (changed) {
        changed = false;
        auto relax = [&](std::size_t p, std::size_t q, std::uint64_t v) {
            if (v < d[p][q]) {
                d[p][q] = v;
                changed = true;
            }
        };
        for (std::size_t s = 0; s < num_symbols(); ++s) {
            if (!is_neutral(static_cast<int>(s))) continue;
            for (std::size_t p = 0; p < m; ++p)
                for (std::size_t q = 0; q < m; ++q)
                    if (neutral_rel[s].get(p, q)) relax(p, q, 1);
        }
        for (std::size_t p = 0; p < m; ++p)
            for (std::size_t r = 0; r < m; ++r) {
                if (d[p][r] == inf) continue;
                for (std::size_t q = 0; q < m; ++q)
                    if (d[r][q] != inf) relax(p, q, d[p][r] + d[r][q]);
            }
        for (std::size_t a = 0; a < num_symbols(); ++a) {
            if (!is_push(static_cast<int>(a))) continue;
            for (std::size_t bb = 0; bb < num_symbols(); ++bb) {
                if (!is_pop(static_cast<int>(bb))) continue;
                for (std::size_t g = 0; g < num_stack(); ++g) {
                    const Relation& pu = push_rel[a][g];
                    const Relation& po = pop_rel[bb][g];
                    for (std::size_t p = 0; p < m; ++p)
                        for (std::size_t p2 = 0; p2 < m; ++p2) {
                            if (!pu.get(p, p2)) continue;
                            for (std::size_t q2 = 0; q2 < m; ++q2) {
                                if (d[p2][q2] == inf) continue;
                                for (std::size_t q = 0; q < m; ++q)
                                    if (po.get(q2, q)) relax(p, q, d[p2][q2] + 2);
                            }
                        }
                }
            }
        }
    }
    std::uint64_t best = 0;
    for (std::size_t p = 0; p < m; ++p)
        for (std::size_t q = 0; q < m; ++q)
            if (d[p][q] != inf) best = std::max(best, d[p][q]);
    return static_cast<std::size_t>(best);
}

void Vpa::validate() const {
    if (m == 0) throw std::invalid_argument("machine has zero states");
    if (m > kMaxStates) throw std::invalid_argument("too many states (cap 16)");
    if (symbols.empty()) throw std::invalid_argument("machine has no symbols");
    for (int q : initial)
        if (q < 0 || static_cast<std::size_t>(q) >= m)
            throw std::invalid_argument("initial state out of range");
    for (int q : finals)
        if (q < 0 || static_cast<std::size_t>(q) >= m)
            throw std::invalid_argument("final state out of range");
}

namespace {

struct Parser {
    std::size_t m = 0;
    bool saw_states = false;
    std::vector<int> initial, finals;
    std::vector<std::string> stack_symbols;
    std::vector<std::string> symbols;
    std::vector<SymClass> symbol_class;
    struct Tr {
        SymClass cls;
        int sym, p, q, g; // g unused for neutral
        std::size_t line;
    };
    std::vector<Tr> transitions;

    int intern_symbol(const std::string& tok, SymClass cls, std::size_t line) {
        for (std::size_t i = 0; i < symbols.size(); ++i) {
            if (symbols[i] == tok) {
                if (symbol_class[i] != cls)
                    throw VpaParseError(line, "symbol '" + tok + "' used in two classes");
                return static_cast<int>(i);
            }
        }
        symbols.push_back(tok);
        symbol_class.push_back(cls);
        return static_cast<int>(symbols.size() - 1);
    }

    int stack_id(const std::string& tok, std::size_t line) const {
        for (std::size_t i = 0; i < stack_symbols.size(); ++i)
            if (stack_symbols[i] == tok) return static_cast<int>(i);
        throw VpaParseError(line, "unknown stack symbol '" + tok + "'");
    }

    int state(const std::string& tok, std::size_t line) const {
        std::size_t pos = 0;
        int v = -1;
        try {
            v = std::stoi(tok, &pos);
        } catch (...) {
            throw VpaParseError(line, "expected state index, got '" + tok + "'");
        }
        if (pos != tok.size() || v < 0 || static_cast<std::size_t>(v) >= m)
            throw VpaParseError(line, "state index out of range: '" + tok + "'");
        return v;
    }
};

} // namespace

Vpa parse_vpa(const std::string& text) {
    Parser ps;
    std::istringstream in(text);
    std::string raw;
    std::size_t lineno = 0;
    while (std::getline(in, raw)) {
        ++lineno;
        auto hash = raw.find('#');
        if (hash != std::string::npos) raw.resize(hash);
        std::istringstream ls(raw);
        std::vector<std::string> tok;
        std::string t;
        while (ls >> t) tok.push_back(t);
        if (tok.empty()) continue;
        const std::string& kw = tok[0];
        auto need = [&](std::size_t n) {
            if (tok.size() != n + 1)
                throw VpaParseError(lineno, "'" + kw + "' expects " + std::to_string(n) + " arguments");
        };
        if (kw == "states") {
            need(1);
            long v = -1;
            try {
                v = std::stol(tok[1]);
            } catch (...) {
                throw VpaParseError(lineno, "bad state count");
            }
            if (v <= 0) throw VpaParseError(lineno, "state count must be positive");
            if (static_cast<std::size_t>(v) > kMaxStates)
                throw VpaParseError(lineno, "state count exceeds cap of 16");
            ps.m = static_cast<std::size_t>(v);
            ps.saw_states = true;
        } else if (kw == "initial" || kw == "final") {
            if (!ps.saw_states) throw VpaParseError(lineno, "'states' must come first");
            auto& dst = (kw == "initial") ? ps.initial : ps.finals;
            for (std::size_t i = 1; i < tok.size(); ++i) dst.push_back(ps.state(tok[i], lineno));
        } else if (kw == "stack") {
            for (std::size_t i = 1; i < tok.size(); ++i) ps.stack_symbols.push_back(tok[i]);
        } else if (kw == "push") {
            if (!ps.saw_states) throw VpaParseError(lineno, "'states' must come first");
            need(4);
            int sym = ps.intern_symbol(tok[1], SymClass::Push, lineno);
            ps.transitions.push_back({SymClass::Push, sym, ps.state(tok[2], lineno),
                                      ps.state(tok[3], lineno), ps.stack_id(tok[4], lineno), lineno});
        } else if (kw == "pop") {
            if (!ps.saw_states) throw VpaParseError(lineno, "'states' must come first");
            need(4);
            int sym = ps.intern_symbol(tok[1], SymClass::Pop, lineno);
            ps.transitions.push_back({SymClass::Pop, sym, ps.state(tok[2], lineno),
                                      ps.state(tok[4], lineno), ps.stack_id(tok[3], lineno), lineno});
        } else if (kw == "neutral") {
            if (!ps.saw_states) throw VpaParseError(lineno, "'states' must come first");
            need(3);
            int sym = ps.intern_symbol(tok[1], SymClass::Neutral, lineno);
            ps.transitions.push_back({SymClass::Neutral, sym, ps.state(tok[2], lineno),
                                      ps.state(tok[3], lineno), 0, lineno});
        } else {
            throw VpaParseError(lineno, "unknown directive '" + kw + "'");
        }
    }
    if (!ps.saw_states) throw VpaParseError(lineno, "missing 'states' directive");

    Vpa vpa;
    vpa.m = ps.m;
    vpa.symbols = ps.symbols;
    vpa.symbol_class = ps.symbol_class;
    vpa.stack_symbols = ps.stack_symbols;
    vpa.initial = ps.initial;
    vpa.finals = ps.finals;
    vpa.push_rel.assign(vpa.num_symbols(),
                        std::vector<Relation>(vpa.num_stack(), Relation(vpa.m)));
    vpa.pop_rel.assign(vpa.num_symbols(),
                       std::vector<Relation>(vpa.num_stack(), Relation(vpa.m)));
    vpa.neutral_rel.assign(vpa.num_symbols(), Relation(vpa.m));
    for (const auto& tr : ps.transitions) {
        switch (tr.cls) {
        case SymClass::Push: vpa.push_rel[tr.sym][tr.g].set(tr.p, tr.q); break;
        case SymClass::Pop: vpa.pop_rel[tr.sym][tr.g].set(tr.p, tr.q); break;
        case SymClass::Neutral: vpa.neutral_rel[tr.sym].set(tr.p, tr.q); break;
        }
    }
    vpa.validate();
    return vpa;
}

Relation relation_of_balanced(const Vpa& vpa, const std::vector<int>& word,
                              const std::vector<Relation>& relations) {
    // Left-to-right fold with a stack of (relation so far at this level,
    // pending push symbol). Push opens a level with the identity; pop closes
    // it by surrounding the inner relation and composing into the level below.
    struct Level {
        Relation outer;
        int push_sym;
    };
    std::vector<Level> stack;
    Relation cur = Relation::identity(vpa.m);
    for (int letter : word) {
        if (letter < 0) {
            std::size_t idx = static_cast<std::size_t>(-letter - 1);
            if (idx >= relations.size())
                throw std::invalid_argument("relation letter index out of range");
            cur = cur.compose(relations[idx]);
            continue;
        }
        if (static_cast<std::size_t>(letter) >= vpa.num_symbols())
            throw std::invalid_argument("symbol not in alphabet");
        switch (vpa.symbol_class[letter]) {
        case SymClass::Neutral:
            cur = cur.compose(vpa.neutral_rel[letter]);
            break;
        case SymClass::Push:
            stack.push_back({std::move(cur), letter});
            cur = Relation::identity(vpa.m);
            break;
        case SymClass::Pop: {
            if (stack.empty()) throw std::invalid_argument("unbalanced word: negative height");
            Level lv = std::move(stack.back());
            stack.pop_back();
            cur = lv.outer.compose(vpa.surround(lv.push_sym, cur, letter));
            break;
        }
        }
    }
    if (!stack.empty()) throw std::invalid_argument("unbalanced word: nonzero final height");
    return cur;
}

bool accepts(const Vpa& vpa, const std::vector<int>& word) {
    long long h = 0;
    for (int letter : word) {
        if (letter < 0) continue;
        if (vpa.is_push(letter)) ++h;
        else if (vpa.is_pop(letter)) --h;
        if (h < 0) return false;
    }
    if (h != 0) return false;
    return vpa.relation_accepts(relation_of_balanced(vpa, word));
}

std::vector<int> tokens_to_word(const Vpa& vpa, const std::vector<std::string>& tokens) {
    std::vector<int> word;
    word.reserve(tokens.size());
    for (const auto& t : tokens) {
        int id = vpa.symbol_id(t);
        if (id < 0) throw std::invalid_argument("unknown symbol token '" + t + "'");
        word.push_back(id);
    }
    return word;
}

} // namespace vplt
