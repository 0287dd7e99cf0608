#pragma once
// Hand-built inputs shared by the unit and acceptance tests.

#include "graphoid/cubes.hpp"
#include "graphoid/store.hpp"

#include <ostream>
#include <string>

namespace graphoid {

// Readable values in test failure messages.
inline void PrintTo(const Value& v, std::ostream* os) { *os << v.to_string(); }

} // namespace graphoid

namespace graphoid::testing {

std::string data_path(const std::string& relative);

// Phone (Ph1..Ph5, two hierarchies) and Time (91 days of 2016) dimensions.
CatalogPtr phone_catalog();
// Five #Phone nodes 11..15 and six #Call edges at Day level.
Graphoid fig3();
Graphoid fig7_golden();
// The base call graph after the Phone -> Operator climb, and after minimize.
Graphoid fig4_golden();
Graphoid fig5_golden();
// The same graph assembled in code rather than read from disk.
Graphoid fig3_built(CatalogPtr catalog);

CatalogPtr sales_catalog();
Cube sales_cube();
// The cube restricted to its Lego / Antwerp / 2014-01-01 cell (Sales 10).
Cube lego_antwerp_first_day(Cube c);

// Phone catalog plus an ExpectedBill dimension (integer amounts), and a
// graph whose #Phone nodes carry [Id, Phone, ExpectedBill].
CatalogPtr billing_catalog();
Graphoid billing_graph(CatalogPtr catalog);

// Dimension with the given levels chained bottom-up to All; members given
// as (member, parent at the next level) per non-top level.
Dimension chain_dimension(const std::string& name, const std::vector<std::string>& levels,
                          const std::vector<std::vector<std::pair<std::string, std::string>>>& members);

} // namespace graphoid::testing
