// File formats: CSV signal files (exact, shortest round-trip decimal),
// PGM P2/P5 images (maxval up to 65535), spiral CSV/SVG exports.
//
// Component values are generally not representable as PGM pixels (they can
// be negative), so 2D components are written twice: a display PGM rescaled
// min->0, max->maxval, and an exact CSV sidecar that round-trips the
// doubles bit for bit.
#pragma once

#include <filesystem>
#include <string>

#include "fmdkit/signal.hpp"
#include "fmdkit/spiral.hpp"

namespace fmd::io {

enum class SignalFormat { csv1d, pgm };

SignalFormat parse_format(const std::string& name);

Signal read_signal(const std::filesystem::path& path, SignalFormat format);

// One sample per line, shortest round-trip decimal; 1D real signals only.
void write_signal_csv1d(const Signal& x, const std::filesystem::path& path);

// pixel = round((v - min) * scale), scale = maxval / (max - min).
// A flat signal maps to all-zero pixels with scale 0.
struct PgmScale {
    double min = 0.0;
    double scale = 0.0;
};

PgmScale write_signal_pgm(const Signal& x, const std::filesystem::path& path, int maxval = 255,
                          bool binary = true);

// Exact CSV for 1D or 2D: 1D matches csv1d; 2D writes a "# rows cols"
// header and one comma-separated line per row.
void write_csv_matrix(const Signal& x, const std::filesystem::path& path);
Signal read_csv_matrix(const std::filesystem::path& path);

void write_spiral_csv(const SpiralPath& p, const std::filesystem::path& path);
// 3D and higher are drawn as orthographic projections onto the first two
// coordinates; the projection is recorded in the SVG metadata.
void write_spiral_svg(const SpiralPath& p, const std::filesystem::path& path);

// Shortest decimal representation that parses back to the same double.
std::string format_double(double v);

}  // namespace fmd::io
