#include "planforge/raster.hpp"

#include <csetjmp>
#include <cstdio>
#include <memory>

#include <fmt/format.h>
#include <png.h>

#include "planforge/error.hpp"

namespace planforge {
namespace {

struct FileCloser {
  void operator()(std::FILE* f) const { std::fclose(f); }
};
using FilePtr = std::unique_ptr<std::FILE, FileCloser>;

FilePtr open_file(const std::filesystem::path& path, const char* mode) {
  return FilePtr(std::fopen(path.c_str(), mode));
}

}  // namespace

GrayRaster read_gray_png(const std::filesystem::path& path) {
  FilePtr file = open_file(path, "rb");
  if (!file) throw InputError("ingest", fmt::format("cannot open raster {}", path.string()));

  png_byte header[8];
  if (std::fread(header, 1, sizeof header, file.get()) != sizeof header || png_sig_cmp(header, 0, sizeof header)) {
    throw InputError("ingest", fmt::format("{} is not a PNG file", path.string()));
  }

  png_structp png = png_create_read_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
  png_infop info = png ? png_create_info_struct(png) : nullptr;
  if (!png || !info) {
    png_destroy_read_struct(&png, &info, nullptr);
    throw InputError("ingest", "libpng initialisation failed");
  }

  GrayRaster out;
  std::vector<png_bytep> rows;
  std::vector<png_byte> buffer;
  if (setjmp(png_jmpbuf(png))) {
    png_destroy_read_struct(&png, &info, nullptr);
    throw InputError("ingest", fmt::format("corrupt PNG {}", path.string()));
  }

  png_init_io(png, file.get());
  png_set_sig_bytes(png, sizeof header);
  png_read_info(png, info);

  const int color_type = png_get_color_type(png, info);
  out.width = static_cast<int>(png_get_image_width(png, info));
  out.height = static_cast<int>(png_get_image_height(png, info));
  out.bit_depth = png_get_bit_depth(png, info);
  if (color_type != PNG_COLOR_TYPE_GRAY) {
    png_destroy_read_struct(&png, &info, nullptr);
    throw InputError("ingest", fmt::format("{} is not a single-channel grayscale raster", path.string()));
  }
  if (out.bit_depth < 8) png_set_expand_gray_1_2_4_to_8(png);
  png_read_update_info(png, info);

  const std::size_t row_bytes = png_get_rowbytes(png, info);
  buffer.resize(row_bytes * out.height);
  rows.resize(out.height);
  for (int y = 0; y < out.height; ++y) rows[y] = buffer.data() + row_bytes * y;
  png_read_image(png, rows.data());
  png_read_end(png, nullptr);
  png_destroy_read_struct(&png, &info, nullptr);

  const std::size_t n = static_cast<std::size_t>(out.width) * out.height;
  out.samples.resize(n);
  if (out.bit_depth == 16) {
    for (std::size_t i = 0; i < n; ++i) {
      out.samples[i] = static_cast<std::uint16_t>((buffer[2 * i] << 8) | buffer[2 * i + 1]);  // big-endian
    }
  } else {
    for (std::size_t i = 0; i < n; ++i) out.samples[i] = buffer[i];
  }
  return out;
}

void write_gray_png(const std::filesystem::path& path, const GrayRaster& raster) {
  if (raster.bit_depth != 8 && raster.bit_depth != 16) {
    throw InputError("raster", fmt::format("unsupported bit depth {}", raster.bit_depth));
  }
  FilePtr file = open_file(path, "wb");
  if (!file) throw InputError("raster", fmt::format("cannot write {}", path.string()));

  png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
  png_infop info = png ? png_create_info_struct(png) : nullptr;
  if (!png || !info) {
    png_destroy_write_struct(&png, &info);
    throw InputError("raster", "libpng initialisation failed");
  }

  const int bytes = raster.bit_depth / 8;
  std::vector<png_byte> buffer(static_cast<std::size_t>(raster.width) * raster.height * bytes);
  for (std::size_t i = 0; i < raster.samples.size(); ++i) {
    if (bytes == 2) {
      buffer[2 * i] = static_cast<png_byte>(raster.samples[i] >> 8);
      buffer[2 * i + 1] = static_cast<png_byte>(raster.samples[i] & 0xff);
    } else {
      buffer[i] = static_cast<png_byte>(raster.samples[i]);
    }
  }
  std::vector<png_bytep> rows(raster.height);
  for (int y = 0; y < raster.height; ++y) {
    rows[y] = buffer.data() + static_cast<std::size_t>(raster.width) * bytes * y;
  }

  if (setjmp(png_jmpbuf(png))) {
    png_destroy_write_struct(&png, &info);
    throw InputError("raster", fmt::format("failed writing {}", path.string()));
  }
  png_init_io(png, file.get());
  png_set_IHDR(png, info, raster.width, raster.height, raster.bit_depth, PNG_COLOR_TYPE_GRAY, PNG_INTERLACE_NONE,
               PNG_COMPRESSION_TYPE_DEFAULT, PNG_FILTER_TYPE_DEFAULT);
  png_write_info(png, info);
  png_write_image(png, rows.data());
  png_write_end(png, nullptr);
  png_destroy_write_struct(&png, &info);
}

}  // namespace planforge
