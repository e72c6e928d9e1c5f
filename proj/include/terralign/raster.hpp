#pragma once

#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

namespace terralign {

// Row-major interleaved raster. Shared pixel container for 8-bit map imagery
// and float working buffers (features, depth, weights).
template <typename T>
class Raster {
 public:
  Raster() = default;
  Raster(int width, int height, int channels = 1, T fill = T{})
      : width_(width), height_(height), channels_(channels) {
    if (width < 0 || height < 0 || channels < 1) {
      throw std::invalid_argument("Raster: bad dimensions " +
                                  std::to_string(width) + "x" +
                                  std::to_string(height) + "x" +
                                  std::to_string(channels));
    }
    data_.assign(static_cast<size_t>(width) * height * channels, fill);
  }

  int width() const { return width_; }
  int height() const { return height_; }
  int channels() const { return channels_; }
  bool empty() const { return data_.empty(); }
  size_t size() const { return data_.size(); }

  T& at(int x, int y, int c = 0) { return data_[index(x, y, c)]; }
  const T& at(int x, int y, int c = 0) const { return data_[index(x, y, c)]; }

  bool contains(int x, int y) const {
    return x >= 0 && x < width_ && y >= 0 && y < height_;
  }

  bool same_shape(const Raster& other) const {
    return width_ == other.width_ && height_ == other.height_ &&
           channels_ == other.channels_;
  }

  T* data() { return data_.data(); }
  const T* data() const { return data_.data(); }
  std::vector<T>& buffer() { return data_; }
  const std::vector<T>& buffer() const { return data_; }

  friend bool operator==(const Raster& a, const Raster& b) {
    return a.width_ == b.width_ && a.height_ == b.height_ &&
           a.channels_ == b.channels_ && a.data_ == b.data_;
  }

 private:
  size_t index(int x, int y, int c) const {
    return (static_cast<size_t>(y) * width_ + x) * channels_ + c;
  }

  int width_ = 0;
  int height_ = 0;
  int channels_ = 1;
  std::vector<T> data_;
};

using RasterU8 = Raster<std::uint8_t>;
using RasterF = Raster<float>;

// Bilinear sample at fractional pixel coordinates (x, y), where integer
// coordinates address pixel centers. Requires 0 <= x <= width-1 (same for y);
// callers gate with in_image_for_bilinear below.
template <typename T>
inline double bilinear(const Raster<T>& img, double x, double y, int c = 0) {
  int x0 = static_cast<int>(x);
  int y0 = static_cast<int>(y);
  if (x0 > img.width() - 2) x0 = img.width() - 2;
  if (y0 > img.height() - 2) y0 = img.height() - 2;
  if (x0 < 0) x0 = 0;
  if (y0 < 0) y0 = 0;
  const double dx = x - x0;
  const double dy = y - y0;
  const double v00 = img.at(x0, y0, c);
  const double v10 = img.at(x0 + 1, y0, c);
  const double v01 = img.at(x0, y0 + 1, c);
  const double v11 = img.at(x0 + 1, y0 + 1, c);
  return (1.0 - dy) * ((1.0 - dx) * v00 + dx * v10) +
         dy * ((1.0 - dx) * v01 + dx * v11);
}

template <typename T>
inline bool in_image_for_bilinear(const Raster<T>& img, double x, double y) {
  return x >= 0.0 && y >= 0.0 && x <= img.width() - 1.0 &&
         y <= img.height() - 1.0 && img.width() >= 2 && img.height() >= 2;
}

inline constexpr float kInvalidDepth = std::numeric_limits<float>::infinity();

}  // namespace terralign
