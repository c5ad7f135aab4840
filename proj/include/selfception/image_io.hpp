#pragma once

#include <string>

#include "selfception/image.hpp"

namespace selfception {

// Decodes a PNG or binary PPM (P6) file. Grayscale is replicated across
// channels, alpha is discarded. Throws IoError / FormatError.
Image load_image(const std::string& path);

// Extension picks the encoder: .ppm/.pnm -> P6, anything else -> PNG.
// Samples are rounded and clamped to [0,255] on write. Throws IoError.
void save_image(const Image& img, const std::string& path);

}  // namespace selfception
