#pragma once

#include <filesystem>
#include <vector>

#include "farsight/core/types.hpp"

namespace farsight::store {

// Binary template store layout, all integers little-endian:
//   magic "FSTB" | version u16 | record count u64
//   per record: id length u32 | id bytes (UTF-8) | modality u8 |
//               dim u32 | dim * f64 (IEEE-754, little-endian)
inline constexpr char kMagic[4] = {'F', 'S', 'T', 'B'};
inline constexpr std::uint16_t kFormatVersion = 1;

// Payload (feature data) size in bytes for one template.
inline std::size_t payload_bytes(const Template& t) { return t.dim() * 8; }

// Writes the store; returns total bytes written. Template dimensions are
// checked against the per-modality configuration.
std::size_t store_write(const std::vector<Template>& entries,
                        const std::filesystem::path& path,
                        const TemplateDims& dims = TemplateDims{});

// Exact inverse of store_write. Parse failures name the file offset.
std::vector<Template> store_read(const std::filesystem::path& path);

}  // namespace farsight::store
