// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The wrconv Authors

#include "wrconv/image.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <istream>

#include "wrconv/errors.hpp"

namespace wrconv {
namespace {

// Next whitespace-delimited header token, skipping '#' comments.
std::string header_token(std::istream& in) {
  std::string tok;
  int c;
  while ((c = in.get()) != EOF) {
    if (c == '#') {
      while ((c = in.get()) != EOF && c != '\n') {
      }
      continue;
    }
    if (std::isspace(c)) {
      if (!tok.empty()) break;
      continue;
    }
    tok.push_back(static_cast<char>(c));
  }
  return tok;
}

std::size_t parse_size(const std::string& tok) {
  if (tok.empty() || !std::all_of(tok.begin(), tok.end(), [](char ch) { return std::isdigit(static_cast<unsigned char>(ch)); })) {
    throw InvalidParameter("malformed PGM header");
  }
  return static_cast<std::size_t>(std::stoul(tok));
}

}  // namespace

GrayImage read_pgm(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open image '" + path + "'");
  if (header_token(in) != "P5") throw InvalidParameter("only binary PGM (P5) images are supported");
  GrayImage img;
  img.width = parse_size(header_token(in));
  img.height = parse_size(header_token(in));
  const std::size_t maxval = parse_size(header_token(in));
  if (img.width == 0 || img.height == 0 || maxval == 0 || maxval > 65535) throw InvalidParameter("bad PGM dimensions");
  // header_token consumed exactly one whitespace byte after maxval.
  const std::size_t count = img.width * img.height;
  const std::size_t bytes = maxval > 255 ? 2 : 1;
  std::vector<unsigned char> raw(count * bytes);
  in.read(reinterpret_cast<char*>(raw.data()), static_cast<std::streamsize>(raw.size()));
  if (static_cast<std::size_t>(in.gcount()) != raw.size()) throw InvalidParameter("truncated PGM pixel data");
  img.pixels.resize(count);
  for (std::size_t i = 0; i < count; ++i) {
    const double v = bytes == 1 ? raw[i] : static_cast<double>((raw[2 * i] << 8) | raw[2 * i + 1]);
    img.pixels[i] = v / static_cast<double>(maxval);
  }
  return img;
}

void write_pgm(const std::string& path, const GrayImage& image) {
  if (image.pixels.size() != image.width * image.height) throw InvalidDimension("image buffer size mismatch");
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write image '" + path + "'");
  out << "P5\n" << image.width << ' ' << image.height << "\n255\n";
  std::vector<unsigned char> raw(image.pixels.size());
  for (std::size_t i = 0; i < raw.size(); ++i) {
    raw[i] = static_cast<unsigned char>(std::lround(std::clamp(image.pixels[i], 0.0, 1.0) * 255.0));
  }
  out.write(reinterpret_cast<const char*>(raw.data()), static_cast<std::streamsize>(raw.size()));
}

GrayImage synthetic_scene(std::size_t side) {
  if (side < 8 || side % 8 != 0) throw InvalidParameter("synthetic scene side must be a positive multiple of 8");
  GrayImage img;
  img.width = img.height = side;
  img.pixels.assign(side * side, 0.5);
  const std::size_t e = side / 8;
  auto fill = [&](std::size_t r0, std::size_t r1, std::size_t c0, std::size_t c1, double v) {
    for (std::size_t r = r0; r < r1; ++r)
      for (std::size_t c = c0; c < c1; ++c) img.pixels[r * side + c] = v;
  };
  fill(2 * e, 5 * e, 2 * e, 4 * e, 1.0);  // object
  fill(3 * e, 4 * e, 4 * e, 5 * e, 1.0);
  fill(2 * e, 5 * e, 5 * e, 7 * e, 0.0);  // shadow
  return img;
}

}  // namespace wrconv
