// io.hpp — Deterministic CSV/JSON emission and the plain-text operator file
// format. All floats are written as 17-significant-digit scientific notation so
// identical configs produce byte-identical files.

#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "zeno/models.hpp"
#include "zeno/zeno_core.hpp"

namespace zeno::io {

struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// ------------------------------ Formatting --------------------------------------

std::string fmt(double x);                       // %.16e
std::string fmt_complex(num::Complex z);         // re+imi, both %.16e
num::Complex parse_complex(const std::string& token);

// ------------------------------ Operator files ----------------------------------

// First line: dimension. Then dim*dim row-major complex entries as re+imi
// tokens separated by whitespace.
num::Matrix read_operator_file(const std::string& path);
void write_operator_file(const std::string& path, const num::Matrix& M);

void write_text_file(const std::string& path, const std::string& content);

// ------------------------------ Emitters ----------------------------------------

// Trajectory schema: t, survival, total_norm, coherence_norm, p_0 ... p_{m-1}
std::string trajectory_csv(const core::Trajectory& traj);
std::string trajectory_json(const core::Trajectory& traj,
                            const models::DecayFit* fit = nullptr);

// Long-format projector table: sector, eta, row, col, re, im
std::string partition_csv(const core::ZenoPartition& part);
std::string partition_json(const core::ZenoPartition& part,
                           const std::vector<std::string>& basis_labels);

// Column vectors (dark-space basis): vector, component, re, im
std::string vectors_csv(const num::Matrix& columns);
std::string vectors_json(const num::Matrix& columns,
                         const std::vector<std::string>& basis_labels);

std::string report_csv(const core::ConvergenceReport& rep);
std::string report_json(const core::ConvergenceReport& rep);

}  // namespace zeno::io
