#ifndef TDT_TESTS_FIXTURES_HPP
#define TDT_TESTS_FIXTURES_HPP

#include <string>

#include "tdt/core.hpp"
#include "tdt/dataio.hpp"
#include "tdt/model.hpp"

#ifndef TDT_TEST_DATA_DIR
#define TDT_TEST_DATA_DIR "tests/data"
#endif

namespace fixtures {

inline std::string data_path(const std::string& name) { return std::string(TDT_TEST_DATA_DIR) + "/" + name; }

/// Five hourly readings of one patient: O2 saturation, arterial pressure,
/// temperature.
inline tdt::Instance patient() {
  return tdt::Instance({{88, 89, 90, 85, 82}, {105, 107, 110, 108, 102}, {37, 37, 39, 39, 37}}, 0);
}

/// Stored racket-sports tree (six channels, four classes, alpha 0.6).
inline tdt::Model racket_model() { return tdt::load_model(tdt::read_file(data_path("racket_tree.model"))); }

inline std::string racket_text() { return tdt::read_file(data_path("racket_tree.txt")); }

}  // namespace fixtures

#endif  // TDT_TESTS_FIXTURES_HPP
