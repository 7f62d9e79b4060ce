#pragma once

#include <cstddef>
#include <set>
#include <string>

#include "bilens/regex.hpp"

// Language-level decision procedures. All inputs must be Var-free; call
// resolve() first when definitions are involved.
namespace bilens {

bool nullable(const Regex& r);
bool language_empty(const Regex& r);
bool languages_disjoint(const Regex& r1, const Regex& r2);
bool lang_equiv(const Regex& r1, const Regex& r2);

// Every string of L(r1)L(r2) splits in exactly one way.
bool unambig_concat(const Regex& r1, const Regex& r2);
// Every string of L(r)* factors in exactly one way.
bool unambig_iter(const Regex& r);
bool strongly_unambiguous(const Regex& r);

std::set<std::string> enumerate_strings(const Regex& r, std::size_t max_len);

}  // namespace bilens
