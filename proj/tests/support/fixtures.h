#ifndef MLPLAN_TESTS_FIXTURES_H_
#define MLPLAN_TESTS_FIXTURES_H_

#include <string>
#include <vector>

#include "mlplan/catalog.h"
#include "mlplan/model.h"

namespace mlplan::fixtures {

// A-B 400 km, B-C 400 km, A-C `ac_km`; links "AB", "BC", "AC"; default spans.
FiberGraph Triangle(double ac_km = 900);
// A-B-C, 400 km each.
FiberGraph PathGraph();
// A-B-C-D-A, 100 km each.
FiberGraph Ring4();
// Single 100G mode (37.5 GHz, reach 2000 km), k_grooming 1, threshold 0.5.
Catalog TriangleCatalog();
// 100G-QPSK reach 2000 km and 200G-16QAM reach 600 km.
Catalog TwoModeCatalog();

Demand Eth(const std::string& id, const std::string& src, const std::string& dst, double gbps,
           ProtectionClass protection = ProtectionClass::kUnprotected);

// Path of a file under tests/fixtures.
std::string FixturePath(const std::string& relative);

}  // namespace mlplan::fixtures

#endif  // MLPLAN_TESTS_FIXTURES_H_
