#ifndef STRUCBENCH_STRUCTURE_TREE_HPP
#define STRUCBENCH_STRUCTURE_TREE_HPP

#include <array>
#include <string>
#include <string_view>
#include <vector>

namespace strucbench {

inline constexpr std::array<std::string_view, 22> kRecognizedHtmlTags = {
    "table", "tr",  "th",    "td",  "ul",  "ol",  "li", "div", "span", "p",     "a",
    "img",   "embed", "pre", "h1",  "h2",  "h3",  "h4", "h5",  "h6",   "input", "button",
};

// `tag` must already be lowercase.
bool is_recognized_tag(std::string_view tag);

// Tag-only tree; carries no text content.
struct StructureTree {
  std::string tag;
  std::vector<StructureTree> children;

  friend bool operator==(const StructureTree&, const StructureTree&) = default;
};

// Pre-order, fully parenthesized: div->[p, p] becomes "(div(p)(p))".
std::string serialize_structure_tree(const StructureTree& tree);

}  // namespace strucbench

#endif  // STRUCBENCH_STRUCTURE_TREE_HPP
