#pragma once

#include <string>
#include <string_view>

#include "cltlab/decompose.hpp"
#include "cltlab/finite_dist.hpp"

namespace cltlab {

// Text form: comma-separated "value:prob" pairs, each a rational literal,
// e.g. "-1:1/3,0:1/3,1:1/3". Whitespace around tokens is ignored.
FiniteDist parse_dist_text(std::string_view text);
std::string format_dist_text(const FiniteDist& d);

// JSON form: {"atoms":[{"v":"-1","p":"1/3"},...]}, rationals as strings.
std::string dist_to_json(const FiniteDist& d);
FiniteDist dist_from_json(std::string_view json);

// {"components":[{"w":"2/3","a":"1","b":"1","p_pos":"1/2"},{"w":"1/3","zero":true}]}
std::string mixture_to_json(const Mixture& m);
Mixture mixture_from_json(std::string_view json);

}  // namespace cltlab
