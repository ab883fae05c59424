#pragma once

#include <span>
#include <string>
#include <vector>

#include "lpflow/field.hpp"

namespace lpflow {

/// Contents of one LPSV1 file.
struct SnapshotFile {
  TorusGrid grid;
  double time = 0.0;
  std::vector<Field> components;
};

/// Layout (little endian): "LPSV1\0", u32 dimension (= 2), u32 N, f64 L,
/// f64 time, u32 component count, then each component's N*N samples row-major.
void write_lpsv(const std::string& path, double time, std::span<const Field> components);
/// Throws Error(Io) on bad magic, truncation or a dimension other than 2.
SnapshotFile read_lpsv(const std::string& path);

VecField as_velocity(const SnapshotFile& f);

}  // namespace lpflow
