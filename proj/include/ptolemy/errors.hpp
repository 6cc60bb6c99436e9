#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace ptolemy {

// Typed failure reasons surfaced by the toolkit. Every error that concerns
// matrix entries carries the offending indices.
enum class errc {
    asymmetric_matrix,
    negative_distance,
    nonzero_diagonal,
    zero_off_diagonal,
    triangle_violation,
    too_few_points,
    bad_basepoint,
    not_symmetric,
    bad_spec,
    disconnected,
    not_a_geodesic,
    line_not_sampled,
    boundary_basepoint,
    window_out_of_range,
    ray_exits_strip,
    corrupt_catalog,
    bad_input,
};

const char* errc_name(errc c);

class error : public std::runtime_error {
public:
    error(errc code, std::string message, std::vector<int> indices = {})
        : std::runtime_error(std::string(errc_name(code)) + ": " + message),
          code_(code),
          indices_(std::move(indices)) {}

    errc code() const { return code_; }
    const std::vector<int>& indices() const { return indices_; }

private:
    errc code_;
    std::vector<int> indices_;
};

} // namespace ptolemy
