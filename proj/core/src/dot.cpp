#include "ssg/dot.hpp"

#include <set>
#include <sstream>

namespace ssg {

namespace {

std::string perm_label(const std::vector<int>& perm) {
  std::ostringstream os;
  os << "(";
  for (std::size_t i = 0; i < perm.size(); ++i) {
    if (i) os << " ";
    os << perm[i];
  }
  os << ")";
  return os.str();
}

}  // namespace

std::string export_dot(const AutomatonPtr& aut) {
  std::ostringstream os;
  os << "digraph moore {\n  rankdir=LR;\n";
  for (std::size_t s = 0; s < aut->state_names.size(); ++s)
    os << "  \"" << aut->state_names[s] << "\" [shape=circle,label=\"" << aut->state_names[s]
       << "\\n" << perm_label(aut->perms[s]) << "\"];\n";
  std::set<std::string> word_nodes;
  for (std::size_t s = 0; s < aut->state_names.size(); ++s)
    for (int i = 0; i < aut->degree; ++i) {
      const auto& sec = aut->sections[s][static_cast<std::size_t>(i)];
      std::string target;
      if (sec.size() == 1 && sec[0] > 0) {
        target = aut->state_names[static_cast<std::size_t>(sec[0] - 1)];
      } else {
        target = FreeWord(sec).str(aut->state_names);
        if (word_nodes.insert(target).second)
          os << "  \"" << target << "\" [shape=oval,style=dashed];\n";
      }
      os << "  \"" << aut->state_names[s] << "\" -> \"" << target << "\" [label=\"" << i << "|"
         << aut->perms[s][static_cast<std::size_t>(i)] << "\"];\n";
    }
  os << "}\n";
  return os.str();
}

namespace {

void portrait_nodes(const Portrait& node, const std::string& id, std::ostringstream& os) {
  os << "  \"" << id << "\" [shape=box,label=\"" << perm_label(node.perm) << "\"];\n";
  for (std::size_t i = 0; i < node.children.size(); ++i) {
    std::string child = id + "." + std::to_string(i);
    portrait_nodes(node.children[i], child, os);
    os << "  \"" << id << "\" -> \"" << child << "\" [label=\"" << i << "\"];\n";
  }
}

}  // namespace

std::string export_dot(const Portrait& portrait) {
  std::ostringstream os;
  os << "digraph portrait {\n";
  portrait_nodes(portrait, "v", os);
  os << "}\n";
  return os.str();
}

}  // namespace ssg
