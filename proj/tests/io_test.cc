// Copyright 2026 The rrsched Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include "rrsched/io.h"

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "gtest/gtest.h"
#include "test_util.h"

namespace rrsched {
namespace {

void ExpectSameInstance(const Instance& a, const Instance& b) {
  EXPECT_EQ(a.id(), b.id());
  EXPECT_EQ(a.nominal(), b.nominal());
  EXPECT_EQ(a.deviation(), b.deviation());
}

TEST(InstanceIoTest, JsonRoundTrip) {
  const Instance inst = testing::EightJobInstance();
  ExpectSameInstance(ParseInstanceJson(InstanceToJson(inst)), inst);
}

TEST(InstanceIoTest, CsvRoundTripAnyRowOrder) {
  const Instance inst("x", {3, 1, 2}, {0, 5, 6});
  std::ostringstream os;
  WriteInstanceCsv(os, inst);
  std::istringstream is(os.str());
  ExpectSameInstance(ReadInstanceCsv(is, "x"), inst);
  std::istringstream shuffled("job,p_hat,p_bar\n3,2,6\n1,3,0\n2,1,5\n");
  ExpectSameInstance(ReadInstanceCsv(shuffled, "x"), inst);
}

TEST(InstanceIoTest, Errors) {
  EXPECT_THROW(ParseInstanceJson("{"), FormatError);
  EXPECT_THROW(ParseInstanceJson(R"({"id":"a","n":2,"p_hat":[1],"p_bar":[1,2]})"),
               FormatError);
  EXPECT_THROW(ParseInstanceJson(R"({"id":"a","n":1,"p_hat":[1.5],"p_bar":[1]})"),
               FormatError);
  EXPECT_THROW(ParseInstanceJson(R"({"id":"a","n":1,"p_hat":[-1],"p_bar":[1]})"),
               FormatError);
  EXPECT_THROW(
      ParseInstanceJson(R"({"id":"a","n":1,"p_hat":[2000000],"p_bar":[1]})"),
      FormatError);
  std::istringstream missing("job,p_hat,p_bar\n1,1,1\n3,1,1\n");
  EXPECT_THROW(ReadInstanceCsv(missing, "m"), FormatError);
  std::istringstream header("a,b,c\n1,1,1\n");
  EXPECT_THROW(ReadInstanceCsv(header, "m"), FormatError);
  EXPECT_THROW(ReadFile("/nonexistent/file.json"), FormatError);
}

TEST(InstanceIoTest, LoadByExtension) {
  const auto dir = std::filesystem::temp_directory_path() / "rrsched_io_test";
  std::filesystem::create_directories(dir);
  const Instance inst("n3", {3, 1, 2}, {4, 5, 6});
  {
    std::ofstream(dir / "a.json") << InstanceToJson(inst);
    std::ofstream csv(dir / "b.csv");
    WriteInstanceCsv(csv, inst);
  }
  ExpectSameInstance(LoadInstance((dir / "a.json").string()), inst);
  EXPECT_EQ(LoadInstance((dir / "b.csv").string()).id(), "b");
  EXPECT_THROW(LoadInstance((dir / "c.txt").string()), FormatError);
  std::filesystem::remove_all(dir);
}

TEST(PolyhedronIoTest, RoundTripAndBudgetedForm) {
  const Polyhedron u = testing::TwoJobSet();
  const Polyhedron back = ParsePolyhedronJson(PolyhedronToJson(u));
  ASSERT_EQ(back.num_rows(), u.num_rows());
  for (int m = 0; m < u.num_rows(); ++m) {
    EXPECT_EQ(back.rows()[m].a, u.rows()[m].a);
    EXPECT_EQ(back.b(m), u.b(m));
  }
  const Instance inst = testing::EightJobInstance();
  const Polyhedron b =
      ParsePolyhedronJson(R"({"type":"budgeted","gamma":2})", &inst);
  const Polyhedron expected = BudgetedPolyhedron(inst, 2);
  ASSERT_EQ(b.num_rows(), expected.num_rows());
  EXPECT_EQ(b.rows().back().a, expected.rows().back().a);
  EXPECT_THROW(ParsePolyhedronJson(R"({"type":"budgeted","gamma":2})"),
               FormatError);
  EXPECT_THROW(ParsePolyhedronJson(R"({"n":2,"rows":[{"a":[1],"b":1}]})"),
               FormatError);
}

TEST(ScheduleIoTest, RoundTrip) {
  const Schedule s({3, 1, 2});
  EXPECT_EQ(ParseScheduleJson(ScheduleToJson(s)), s);
  EXPECT_EQ(ParseScheduleJson(R"({"positions":"1-based","jobs":[2,1]})"),
            Schedule({2, 1}));
  EXPECT_THROW(ParseScheduleJson(R"({"jobs":[1,1]})"), FormatError);
  EXPECT_THROW(ParseScheduleJson(R"({"positions":"0-based","jobs":[0,1]})"),
               FormatError);
}

}  // namespace
}  // namespace rrsched
