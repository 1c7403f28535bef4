#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

#include "typotex/image.hpp"

namespace typotex {

/// PNG bytes for an 8-bit gray, RGB or RGBA image.
std::vector<std::uint8_t> encode_png(const Image& image);

/// Decodes any 8-bit-or-less PNG. Color type decides the channel count of
/// the result: files with alpha (or a tRNS chunk) give RGBA, the rest RGB.
/// Throws DecodeError for anything that is not a readable PNG.
Image decode_png(std::span<const std::uint8_t> bytes);

Image load_png(const std::filesystem::path& path);
void save_png(const std::filesystem::path& path, const Image& image);

/// Whole-file helpers shared by the loaders. read_file throws FileNotFound.
std::vector<std::uint8_t> read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::span<const std::uint8_t> bytes);

}  // namespace typotex
