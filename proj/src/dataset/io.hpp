#pragma once

#include <ostream>
#include <span>
#include <string>

#include "memsuite/dataset/dataset.hpp"

namespace memsuite::dataset::detail {

std::uint64_t trajectory_bytes(const std::vector<field_spec>& schema, int length);
void assign_offsets(header& h);
std::string encode_header(const header& h);
header decode_header(const std::string& text);
void write_preamble(std::ostream& out, const header& h);
void write_trajectory(std::ostream& out, const header& h, const trajectory& t);

}  // namespace memsuite::dataset::detail
