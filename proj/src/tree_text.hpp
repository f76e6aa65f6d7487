#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "diagcx/picture.hpp"

namespace diagcx {

/// Bracket tree with leaves drawn from `leaves`; the leaf characters are
/// appended to `marks` in frame-bottom order.
Picture parse_marked_tree(std::string_view text, Variant variant,
                          std::string_view leaves, std::string* marks);

/// Bracket form with leaf_mark[i] printed for frame-bottom port i ('.' if empty).
std::string tree_bracket_marked(const Picture& p, const std::vector<char>& leaf_mark);

}  // namespace diagcx
