#pragma once

#include <stdexcept>
#include <string>

namespace latidx {

struct error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct dimension_error : error {
    using error::error;
};

struct singular_matrix_error : error {
    using error::error;
};

struct not_symmetric_error : error {
    using error::error;
};

struct not_positive_definite_error : error {
    using error::error;
};

struct not_well_rounded_error : error {
    using error::error;
};

struct wrong_maximal_index_error : error {
    using error::error;
};

struct wrong_length_error : error {
    using error::error;
};

struct rank_deficient_error : error {
    using error::error;
};

struct out_of_range_error : error {
    using error::error;
};

struct parse_error : error {
    using error::error;
};

struct validation_error : error {
    using error::error;
};

} // namespace latidx
