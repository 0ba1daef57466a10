#include "nlsf/fieldfile.hpp"

#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>

#include "nlsf/errors.hpp"

static_assert(std::endian::native == std::endian::little,
              "field files are little-endian; byte swapping not implemented");

namespace nlsf {

namespace {
constexpr char kMagic[4] = {'N', 'L', 'S', 'F'};
constexpr std::uint32_t kVersion = 1;
} // namespace

void write_field(const std::string& path, const ComplexField& q) {
    validate(q);
    std::ofstream out(path, std::ios::binary);
    if (!out) throw GridMismatch("write_field: cannot open " + path);
    const std::uint64_t n = q.size();
    out.write(kMagic, 4);
    out.write(reinterpret_cast<const char*>(&kVersion), sizeof kVersion);
    out.write(reinterpret_cast<const char*>(&n), sizeof n);
    out.write(reinterpret_cast<const char*>(&q.x0), sizeof q.x0);
    out.write(reinterpret_cast<const char*>(&q.dx), sizeof q.dx);
    out.write(reinterpret_cast<const char*>(&q.t), sizeof q.t);
    out.write(reinterpret_cast<const char*>(q.values.data()),
              static_cast<std::streamsize>(n * sizeof(cplx)));
    if (!out) throw GridMismatch("write_field: short write to " + path);
}

ComplexField read_field(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw GridMismatch("read_field: cannot open " + path);
    char magic[4];
    std::uint32_t version = 0;
    std::uint64_t n = 0;
    ComplexField q;
    in.read(magic, 4);
    in.read(reinterpret_cast<char*>(&version), sizeof version);
    in.read(reinterpret_cast<char*>(&n), sizeof n);
    in.read(reinterpret_cast<char*>(&q.x0), sizeof q.x0);
    in.read(reinterpret_cast<char*>(&q.dx), sizeof q.dx);
    in.read(reinterpret_cast<char*>(&q.t), sizeof q.t);
    if (!in || std::memcmp(magic, kMagic, 4) != 0)
        throw GridMismatch("read_field: bad magic in " + path);
    if (version != kVersion)
        throw GridMismatch("read_field: unsupported version in " + path);
    q.values.resize(n);
    in.read(reinterpret_cast<char*>(q.values.data()),
            static_cast<std::streamsize>(n * sizeof(cplx)));
    if (!in) throw GridMismatch("read_field: truncated payload in " + path);
    validate(q);
    return q;
}

} // namespace nlsf
