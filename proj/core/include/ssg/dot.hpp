#pragma once

#include <string>

#include "ssg/automaton.hpp"

namespace ssg {

// Moore diagram: one node per state, one edge per letter labelled
// "letter|image", pointing at the section (word nodes are created for
// multi-letter sections).
std::string export_dot(const AutomatonPtr& aut);

// Labelled portrait tree to the portrait's depth.
std::string export_dot(const Portrait& portrait);

}  // namespace ssg
