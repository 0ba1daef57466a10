#pragma once

#include <string>

#include "nlsf/field.hpp"

namespace nlsf {

/// Binary field format: header {magic "NLSF", u32 version = 1, u64 N,
/// f64 x0, f64 dx, f64 t}, then N interleaved (re, im) f64 samples,
/// everything little-endian. Write/read round trips are bit-identical.
void write_field(const std::string& path, const ComplexField& q);
ComplexField read_field(const std::string& path);

} // namespace nlsf
