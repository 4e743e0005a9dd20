#pragma once

#include "sq2/descriptors.hpp"
#include "sq2/module.hpp"
#include "sq2/stable.hpp"

#include <functional>
#include <sstream>
#include <string>

namespace sq2 {

/* Module file format (structured text, canonical, bit-exact round trip):
 *
 *   algebra <descriptor>
 *   basis <name> <degree>
 *   action <monomial-label> <row>,<col> ...
 *
 * Rows and columns are global basis indices. The unit's action is implied
 * (identity). An action line with no entries is an explicit zero matrix; a
 * missing monomial line means zero only when degrees force it. */

inline bool action_possibly_nonzero(const GradedModule& M, int a)
{
    int da = M.algebra()->degree(a);
    for (const auto& [q, slot] : M.layout())
        if (M.dim_at(q + da) > 0)
            return true;
    return false;
}

inline std::string write_module(const GradedModule& M)
{
    std::ostringstream os;
    os << "algebra " << M.algebra()->descriptor() << "\n";
    for (const auto& b : M.basis())
        os << "basis " << b.name << " " << b.deg << "\n";
    const AlgebraPtr& alg = M.algebra();
    for (int a = 1; a < alg->dim(); ++a) {
        int da = alg->degree(a);
        std::vector<std::pair<int, int>> entries;
        for (const auto& [q, blk] : M.blocks_of(a))
            for (std::size_t r = 0; r < blk.rows(); ++r)
                blk.row(r).for_each_set([&](std::size_t c) {
                    entries.emplace_back(M.offset_at(q + da) + int(r),
                                         M.offset_at(q) + int(c));
                });
        std::sort(entries.begin(), entries.end());
        if (entries.empty() && !action_possibly_nonzero(M, a))
            continue;
        os << "action " << alg->label(a);
        for (const auto& [r, c] : entries)
            os << " " << r << "," << c;
        os << "\n";
    }
    return os.str();
}

using AlgebraResolver = std::function<AlgebraPtr(const std::string&)>;

inline GradedModule read_module(const std::string& text,
                                const AlgebraResolver& resolver = resolve_algebra)
{
    std::istringstream is(text);
    std::string line;
    int lineno = 0;
    auto fail = [&](const std::string& msg) -> void {
        throw Error("module file line " + std::to_string(lineno) + ": " + msg);
    };

    AlgebraPtr alg;
    std::vector<ModuleBasisVec> basis;
    std::vector<std::pair<std::string, std::vector<std::pair<int, int>>>> actions;
    std::vector<bool> actionSeen;

    while (std::getline(is, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r')
            line.pop_back();
        std::istringstream ls(line);
        std::string key;
        if (!(ls >> key))
            continue;
        if (key == "algebra") {
            std::string desc;
            if (!(ls >> desc))
                fail("missing algebra descriptor");
            if (alg)
                fail("duplicate algebra line");
            alg = resolver(desc);
        } else if (key == "basis") {
            if (!alg)
                fail("basis before algebra");
            std::string name;
            int deg;
            if (!(ls >> name >> deg))
                fail("basis line needs a name and a degree");
            basis.push_back({ name, deg });
        } else if (key == "action") {
            if (!alg)
                fail("action before algebra");
            std::string label;
            if (!(ls >> label))
                fail("action line needs a monomial label");
            std::vector<std::pair<int, int>> entries;
            std::string tok;
            while (ls >> tok) {
                auto comma = tok.find(',');
                if (comma == std::string::npos)
                    fail("action entry '" + tok + "' is not row,col");
                try {
                    entries.emplace_back(std::stoi(tok.substr(0, comma)),
                                         std::stoi(tok.substr(comma + 1)));
                } catch (const std::exception&) {
                    fail("action entry '" + tok + "' is not row,col");
                }
            }
            actions.emplace_back(label, std::move(entries));
        } else {
            fail("unknown key '" + key + "'");
        }
    }
    if (!alg)
        throw Error("module file has no algebra line");

    std::map<int, std::pair<int, int>> layout;
    for (int g = 0; g < int(basis.size()); ++g) {
        if (g && basis[std::size_t(g)].deg < basis[std::size_t(g - 1)].deg)
            throw Error("module file basis not sorted by degree");
        auto& slot = layout[basis[std::size_t(g)].deg];
        if (slot.second == 0)
            slot.first = g;
        slot.second += 1;
    }
    auto degOf = [&](int g) { return basis[std::size_t(g)].deg; };
    auto dimAt = [&](int q) {
        auto it = layout.find(q);
        return it == layout.end() ? 0 : it->second.second;
    };

    std::map<std::string, int> byLabel;
    for (int a = 0; a < alg->dim(); ++a)
        byLabel[alg->label(a)] = a;

    std::vector<std::map<int, Gf2Mat>> act(std::size_t(alg->dim()));
    for (const auto& [q, slot] : layout)
        act[0][q] = Gf2Mat::identity(std::size_t(slot.second));

    std::vector<bool> seen(std::size_t(alg->dim()), false);
    for (const auto& [label, entries] : actions) {
        auto it = byLabel.find(label);
        if (it == byLabel.end())
            throw Error("module file action references '" + label +
                        "' which is not a basis monomial of the algebra");
        int a = it->second;
        if (a == 0)
            throw Error("module file must not list the unit's action");
        if (seen[std::size_t(a)])
            throw Error("module file has duplicate action line for " + label);
        seen[std::size_t(a)] = true;
        int da = alg->degree(a);
        for (const auto& [r, c] : entries) {
            if (r < 0 || r >= int(basis.size()) || c < 0 || c >= int(basis.size()))
                throw Error("action entry out of range for " + label);
            int q = degOf(c);
            if (degOf(r) != q + da)
                throw Error("action entry for " + label + " violates degree homogeneity");
            auto& blk = act[std::size_t(a)][q];
            if (blk.rows() == 0)
                blk = Gf2Mat(std::size_t(dimAt(q + da)), std::size_t(dimAt(q)));
            blk.set(std::size_t(r - layout[q + da].first), std::size_t(c - layout[q].first));
        }
    }

    GradedModule M(alg, std::move(basis), std::move(act));
    for (int a = 1; a < alg->dim(); ++a)
        if (!seen[std::size_t(a)] && action_possibly_nonzero(M, a))
            throw Error("module file is missing the action of " + alg->label(a) +
                        " and degrees do not force it to vanish");
    return M;
}

inline std::string write_stable_class(const StableClass& c)
{
    std::ostringstream os;
    os << "stableclass\n";
    if (c.provenance)
        os << "provenance m=" << c.provenance->first << " l=" << c.provenance->second << "\n";
    else
        os << "provenance none\n";
    for (const auto& [q, d, ranks] : c.sig.rows) {
        os << "sig " << q << " " << d;
        for (int r : ranks)
            os << " " << r;
        os << "\n";
    }
    os << "module\n" << write_module(c.minimalRep) << "end\n";
    return os.str();
}

inline std::string fnv1a64_hex(const std::string& s)
{
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char ch : s) {
        h ^= ch;
        h *= 1099511628211ull;
    }
    std::ostringstream os;
    os << std::hex << h;
    return os.str();
}

} // namespace sq2
