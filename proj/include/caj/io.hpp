#ifndef CAJ_IO_HPP
#define CAJ_IO_HPP

#include "caj/types.hpp"

#include <stdexcept>
#include <string>

namespace caj::io {

struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct BadMagicError : IoError {
    using IoError::IoError;
};
struct TruncatedError : IoError {
    using IoError::IoError;
};
struct UnsupportedVersionError : IoError {
    using IoError::IoError;
};
struct FormatError : IoError {
    using IoError::IoError;
};

enum class MatrixFileFormat { binary, csv };

/// Feature file: magic "CAJF", version u32, N u32, D u32 (little-endian),
/// then N*D float32 row-major. Values are quantized to float32 on write.
FeatureMatrix read_features(const std::string& path);
void write_features(const FeatureMatrix& features, const std::string& path);

/// Round a feature matrix through the float32 grid used by the file format.
FeatureMatrix quantize_to_file_precision(const FeatureMatrix& features);

/// Label file: CSV with header "index,camera[,identity]", rows indexed
/// consecutively from 0.
SampleMeta read_labels(const std::string& path);
void write_labels(const SampleMeta& meta, const std::string& path);

/// Matrix file: magic "CAJD", version u32, kind u32, rows u32, cols u32
/// (little-endian), then rows*cols float64 row-major; lossless round-trip.
DistanceMatrix read_matrix(const std::string& path);
/// CSV alternative: one row per line, values with 17 significant digits
/// (decimal round-trip is exact for doubles). The kind is not stored.
Matrix read_matrix_csv(const std::string& path);
void write_matrix(const DistanceMatrix& dist, const std::string& path,
                  MatrixFileFormat format);

}  // namespace caj::io

#endif
