#pragma once

#include <string>
#include <vector>

#include "occ/camera.hpp"
#include "occ/modulation.hpp"
#include "occ/prt.hpp"
#include "occ/sampler.hpp"

namespace occ {

// Deterministic float formatting shared by every writer, so identical
// runs produce byte-identical files.
std::string format_double(double v);

// Bitstream: a single line of 0/1 characters.
void write_bits(const std::string& path, const Bits& bits);
Bits read_bits(const std::string& path);
Bits parse_bits(const std::string& text);

// Gray column: one value per line.
void write_column(const std::string& path, const GrayColumn& col);
GrayColumn read_column(const std::string& path);

// Frame: "R C maxval" then R lines of C integers. Round-trips bit-exact
// for captures quantized to maxval levels.
void write_frame(const std::string& path, const Frame& frame, int maxval = 255);
Frame read_frame(const std::string& path);

// CSV exports for plotting.
std::string level_table_csv(const LevelTable& table);
std::string threshold_set_csv(const ThresholdSet& set);
std::string sample_plan_csv(const SamplePlan& plan);
void write_text(const std::string& path, const std::string& text);

}  // namespace occ
