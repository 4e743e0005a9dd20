#pragma once

#include "sq2/algebra.hpp"
#include "sq2/profile.hpp"
#include "sq2/quotient.hpp"

#include <string>
#include <vector>

namespace sq2 {

/* Algebra descriptors: A:n, E:n, J:t, Bi:i, Bprime:n,i, D:n,i, X:n,i, Y:n,i,
 * O:n,i, profile:h1,h2,..., and quotient:<H>/<Z>. */

inline std::vector<int> parse_int_list(const std::string& s, const std::string& what)
{
    std::vector<int> out;
    std::size_t pos = 0;
    while (pos < s.size()) {
        std::size_t next = s.find(',', pos);
        std::string tok = s.substr(pos, next == std::string::npos ? next : next - pos);
        if (tok.empty() || tok.find_first_not_of("0123456789") != std::string::npos)
            throw Error("bad integer '" + tok + "' in " + what);
        long v = std::stol(tok);
        if (v > (1 << 28))
            throw Error("integer out of range in " + what);
        out.push_back(int(v));
        if (next == std::string::npos)
            break;
        pos = next + 1;
    }
    if (out.empty())
        throw Error("empty integer list in " + what);
    return out;
}

inline Profile profile_from_descriptor(const std::string& desc)
{
    auto colon = desc.find(':');
    if (colon == std::string::npos)
        throw Error("bad algebra descriptor '" + desc + "'");
    std::string kind = desc.substr(0, colon);
    std::string rest = desc.substr(colon + 1);
    auto args = parse_int_list(rest, desc);
    auto need = [&](std::size_t n) {
        if (args.size() != n)
            throw Error("descriptor '" + desc + "' needs " + std::to_string(n) + " argument(s)");
    };
    if (kind == "A") {
        need(1);
        return profile_A(args[0]);
    }
    if (kind == "E") {
        need(1);
        return profile_E(args[0]);
    }
    if (kind == "J") {
        need(1);
        return profile_J(args[0]);
    }
    if (kind == "Bi") {
        need(1);
        return profile_B(args[0]);
    }
    if (kind == "Bprime") {
        need(2);
        return profile_Bprime(args[0], args[1]);
    }
    if (kind == "D") {
        need(2);
        return profile_D(args[0], args[1]);
    }
    if (kind == "X") {
        need(2);
        return profile_X(args[0], args[1]);
    }
    if (kind == "Y") {
        need(2);
        return profile_Y(args[0], args[1]);
    }
    if (kind == "O") {
        need(2);
        return profile_O(args[0], args[1]);
    }
    if (kind == "profile") {
        Profile p(args);
        if (!validate_profile(p).valid)
            throw Error("profile " + p.label() + " is not a valid profile function");
        return p;
    }
    throw Error("unknown algebra family '" + kind + "'");
}

inline AlgebraPtr resolve_algebra(const std::string& desc)
{
    if (desc.rfind("quotient:", 0) == 0) {
        std::string rest = desc.substr(9);
        auto slash = rest.rfind('/');
        if (slash == std::string::npos)
            throw Error("quotient descriptor needs the form quotient:<H>/<Z>");
        std::string hDesc = rest.substr(0, slash);
        std::string zDesc = rest.substr(slash + 1);
        if (hDesc.rfind("quotient:", 0) == 0 || zDesc.rfind("quotient:", 0) == 0)
            throw Error("nested quotient descriptors are not supported");
        auto H = make_milnor_algebra(profile_from_descriptor(hDesc), hDesc);
        auto Z = make_milnor_algebra(profile_from_descriptor(zDesc), zDesc);
        return make_quotient(H, milnor_embedding(Z, H));
    }
    Profile p = profile_from_descriptor(desc);
    if (!p.finite())
        throw Error("algebra '" + desc + "' is infinite and cannot be built");
    return make_milnor_algebra(std::move(p), desc);
}

inline MilnorAlgebraPtr resolve_milnor(const std::string& desc)
{
    auto a = std::dynamic_pointer_cast<const MilnorAlgebra>(resolve_algebra(desc));
    if (!a)
        throw Error("descriptor '" + desc + "' is not a Milnor-basis algebra");
    return a;
}

} // namespace sq2
