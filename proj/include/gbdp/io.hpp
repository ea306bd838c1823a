#ifndef GBDP_IO_HPP
#define GBDP_IO_HPP

#include <iosfwd>
#include <string>

#include <Eigen/Dense>

#include "gbdp/param.hpp"
#include "gbdp/simulate.hpp"

namespace gbdp {

inline constexpr int kFormatVersion = 1;

/*
 * Model and parametrization files are JSON documents; see README for the
 * schemas. Parsing is strict: unknown keys, missing required keys, wrong
 * types and a format_version other than 1 all raise ParseError.
 */
TransitionModel parse_model(const std::string& text);
std::string write_model(const TransitionModel& model);

Parametrization parse_params(const std::string& text);
std::string write_params(const Parametrization& p);

GridShape parse_shape_json(const std::string& text);

/// Header row of quoted state labels, one labelled row per state, 17 significant digits.
void write_matrix_csv(const Grid& grid, const Eigen::MatrixXd& m, std::ostream& out);

/// state,count,frequency rows plus a final "sink" row when anything was absorbed.
void write_frequencies_csv(const Grid& grid, const Frequencies& f, std::ostream& out);

std::string read_file(const std::string& path);

}  // namespace gbdp

#endif  // GBDP_IO_HPP
