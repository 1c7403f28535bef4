#include "typotex/png_codec.hpp"

#include <png.h>

#include <cstring>
#include <fstream>
#include <iterator>

#include "typotex/errors.hpp"

namespace typotex {

std::vector<std::uint8_t> encode_png(const Image& image) {
  png_image info;
  std::memset(&info, 0, sizeof info);
  info.version = PNG_IMAGE_VERSION;
  info.width = static_cast<png_uint_32>(image.width());
  info.height = static_cast<png_uint_32>(image.height());
  switch (image.channels()) {
    case 1:
      info.format = PNG_FORMAT_GRAY;
      break;
    case 3:
      info.format = PNG_FORMAT_RGB;
      break;
    default:
      info.format = PNG_FORMAT_RGBA;
      break;
  }
  const png_int_32 stride = image.width() * image.channels();
  png_alloc_size_t size = 0;
  if (!png_image_write_to_memory(&info, nullptr, &size, 0, image.data().data(), stride, nullptr)) {
    throw Error(std::string("PNG encode failed: ") + info.message);
  }
  std::vector<std::uint8_t> out(size);
  if (!png_image_write_to_memory(&info, out.data(), &size, 0, image.data().data(), stride, nullptr)) {
    throw Error(std::string("PNG encode failed: ") + info.message);
  }
  out.resize(size);
  return out;
}

Image decode_png(std::span<const std::uint8_t> bytes) {
  png_image info;
  std::memset(&info, 0, sizeof info);
  info.version = PNG_IMAGE_VERSION;
  if (!png_image_begin_read_from_memory(&info, bytes.data(), bytes.size())) {
    throw DecodeError(std::string("not a readable PNG: ") + info.message);
  }
  const bool alpha = (info.format & PNG_FORMAT_FLAG_ALPHA) != 0;
  const int channels = alpha ? 4 : 3;
  info.format = alpha ? PNG_FORMAT_RGBA : PNG_FORMAT_RGB;
  if (info.width < 1 || info.height < 1) {
    png_image_free(&info);
    throw DecodeError("PNG has zero dimensions");
  }
  std::vector<std::uint8_t> pixels(PNG_IMAGE_SIZE(info));
  if (!png_image_finish_read(&info, nullptr, pixels.data(), 0, nullptr)) {
    const std::string message = info.message;
    png_image_free(&info);
    throw DecodeError("PNG decode failed: " + message);
  }
  return Image(static_cast<int>(info.width), static_cast<int>(info.height), channels, std::move(pixels));
}

std::vector<std::uint8_t> read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FileNotFound("cannot open '" + path.string() + "'");
  return std::vector<std::uint8_t>(std::istreambuf_iterator<char>(in), {});
}

void write_file(const std::filesystem::path& path, std::span<const std::uint8_t> bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw Error("cannot write '" + path.string() + "'");
}

Image load_png(const std::filesystem::path& path) { return decode_png(read_file(path)); }

void save_png(const std::filesystem::path& path, const Image& image) { write_file(path, encode_png(image)); }

}  // namespace typotex
