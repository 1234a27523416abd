#ifndef STRUCBENCH_PROMPTS_HPP
#define STRUCBENCH_PROMPTS_HPP

#include <string>
#include <string_view>

#include "strucbench/table.hpp"

namespace strucbench {

// Similarity-rating prompt asking for a JSON object with
// "content_similarity" and "structural_similarity" on a 0-10 scale.
std::string build_gptscore_prompt(std::string_view table1, std::string_view table2);

// Format-description instruction for `format`, followed by a blank line and
// the payload.
std::string build_description_prompt(TableFormat format, std::string_view payload);

}  // namespace strucbench

#endif  // STRUCBENCH_PROMPTS_HPP
