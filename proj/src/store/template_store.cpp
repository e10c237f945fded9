#include "farsight/store/template_store.hpp"

#include <bit>
#include <cstring>
#include <fstream>

namespace farsight::store {
namespace {

static_assert(std::endian::native == std::endian::little,
              "serialization assumes a little-endian host");
static_assert(sizeof(double) == 8);

void put(std::ofstream& out, const void* data, std::size_t n) {
    out.write(static_cast<const char*>(data), static_cast<std::streamsize>(n));
}

class Reader {
public:
    Reader(std::ifstream& in, const std::filesystem::path& path)
        : in_(in), path_(path) {}

    void read(void* data, std::size_t n, const char* what) {
        in_.read(static_cast<char*>(data), static_cast<std::streamsize>(n));
        if (static_cast<std::size_t>(in_.gcount()) != n)
            fail_io("truncated template store: expected " + std::string(what) +
                    " at offset " + std::to_string(offset_) + " in " +
                    path_.string());
        offset_ += n;
    }

    template <typename T>
    T scalar(const char* what) {
        T value;
        read(&value, sizeof(T), what);
        return value;
    }

    std::size_t offset() const { return offset_; }

private:
    std::ifstream& in_;
    const std::filesystem::path& path_;
    std::size_t offset_ = 0;
};

}  // namespace

std::size_t store_write(const std::vector<Template>& entries,
                        const std::filesystem::path& path,
                        const TemplateDims& dims) {
    for (const Template& t : entries) {
        if (t.dim() != dims.of(t.modality))
            fail_invalid("store_write: template dim " + std::to_string(t.dim()) +
                         " does not match configured " +
                         std::string(modality_name(t.modality)) + " dim " +
                         std::to_string(dims.of(t.modality)));
    }

    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) fail_io("cannot write template store: " + path.string());

    std::size_t bytes = 0;
    put(out, kMagic, 4);
    put(out, &kFormatVersion, 2);
    const std::uint64_t count = entries.size();
    put(out, &count, 8);
    bytes += 14;

    for (const Template& t : entries) {
        const std::uint32_t id_len = static_cast<std::uint32_t>(t.subject_id.size());
        put(out, &id_len, 4);
        put(out, t.subject_id.data(), id_len);
        const std::uint8_t tag = static_cast<std::uint8_t>(t.modality);
        put(out, &tag, 1);
        const std::uint32_t dim = static_cast<std::uint32_t>(t.dim());
        put(out, &dim, 4);
        put(out, t.vector.data(), payload_bytes(t));
        bytes += 4 + id_len + 1 + 4 + payload_bytes(t);
    }
    if (!out) fail_io("short write: " + path.string());
    return bytes;
}

std::vector<Template> store_read(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail_io("cannot open template store: " + path.string());
    Reader r(in, path);

    char magic[4];
    r.read(magic, 4, "magic");
    if (std::memcmp(magic, kMagic, 4) != 0)
        fail_io("bad magic in " + path.string() + " at offset 0");
    const auto version = r.scalar<std::uint16_t>("version");
    if (version != kFormatVersion)
        fail_io("unsupported template store version " + std::to_string(version) +
                " at offset 4 in " + path.string());
    const auto count = r.scalar<std::uint64_t>("record count");

    std::vector<Template> out;
    out.reserve(static_cast<std::size_t>(count));
    for (std::uint64_t i = 0; i < count; ++i) {
        const auto id_len = r.scalar<std::uint32_t>("id length");
        std::string id(id_len, '\0');
        r.read(id.data(), id_len, "subject id");
        const auto tag = r.scalar<std::uint8_t>("modality tag");
        if (tag > 2)
            fail_io("bad modality tag at offset " +
                    std::to_string(r.offset() - 1) + " in " + path.string());
        const auto dim = r.scalar<std::uint32_t>("dim");
        std::vector<double> vec(dim);
        r.read(vec.data(), static_cast<std::size_t>(dim) * 8, "feature payload");
        out.emplace_back(std::move(id), static_cast<Modality>(tag),
                         std::move(vec));
    }
    return out;
}

}  // namespace farsight::store
