#include <gtest/gtest.h>

#include <cmath>
#include <limits>

#include "hatano/csv.hpp"
#include "hatano/errors.hpp"

using namespace hatano;

TEST(FormatDouble, ShortestRoundTrip) {
  EXPECT_EQ(format_double(0.1), "0.1");
  EXPECT_EQ(format_double(-2.5), "-2.5");
  EXPECT_EQ(format_double(std::numeric_limits<double>::infinity()), "inf");
  EXPECT_EQ(format_double(std::nan("")), "nan");
  for (double x : {1.0 / 3.0, 6.02214076e23, 5e-324, -0.0}) EXPECT_EQ(parse_double(format_double(x)), x);
  EXPECT_TRUE(std::isinf(parse_double("-inf")));
  EXPECT_THROW(parse_double("1.5x"), SchemaError);
  EXPECT_THROW(parse_double(""), SchemaError);
}

TEST(CsvWriter, RowsAndOptionals) {
  CsvWriter w({"a", "b", "c", "d"});
  w.row(std::string("x"), 3, 0.25, true);
  w.row("y", std::optional<int>(), std::optional<double>(1.5), false);
  EXPECT_EQ(w.str(), "a,b,c,d\nx,3,0.25,1\ny,,1.5,0\n");
  EXPECT_EQ(w.rows(), 2u);
  EXPECT_THROW(w.row(1, 2), SchemaError);
}

TEST(ParseCsv, TableAccess) {
  const CsvTable t = parse_csv("a,b\n1,2\n3,\n");
  EXPECT_EQ(t.column("b"), 1u);
  EXPECT_EQ(t.rows[1][1], "");
  EXPECT_THROW(t.column("zz"), SchemaError);
  EXPECT_THROW(parse_csv("a,b\n1\n"), SchemaError);
}
