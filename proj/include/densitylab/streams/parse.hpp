#pragma once

#include <string_view>

#include "densitylab/setalg/parse.hpp"
#include "densitylab/streams/stream.hpp"

namespace densitylab::streams {

Stream parse_stream(std::string_view text);
Stream parse_stream(setalg::Cursor& cur);
FinitePermutation parse_permutation(std::string_view text);
FinitePermutation parse_permutation(setalg::Cursor& cur);

}  // namespace densitylab::streams
