#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <limits>
#include <fstream>
#include <sstream>

#include "cli/cli.hpp"
#include "concentro/errors.hpp"
#include "concentro/io.hpp"

using namespace concentro;
namespace fs = std::filesystem;

namespace {

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("concentro_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string file(const std::string& name, const std::string& body) {
    const auto p = dir_ / name;
    std::ofstream(p) << body;
    return p.string();
  }

  int run(std::vector<std::string> args) {
    out_.str("");
    err_.str("");
    return cli::dispatch(args, out_, err_);
  }

  // Cell `col` of the first data row whose cell `key_col` equals `key`.
  static std::string cell(const std::string& csv, std::size_t key_col, const std::string& key, std::size_t col) {
    std::istringstream in(csv);
    std::string line;
    while (std::getline(in, line)) {
      if (line.empty() || line[0] == '#') continue;
      std::vector<std::string> cells(1);
      bool quoted = false;
      for (char ch : line) {
        if (ch == '"') quoted = !quoted;
        else if (ch == ',' && !quoted) cells.emplace_back();
        else cells.back() += ch;
      }
      if (key_col < cells.size() && cells[key_col] == key && col < cells.size()) return cells[col];
    }
    ADD_FAILURE() << "no row with " << key << " in\n" << csv;
    return "nan";
  }

  fs::path dir_;
  std::ostringstream out_, err_;
};

const char* kIdentity = R"({"order":2,"dim":2,"values":[1,0,0,1]})";
const char* kX1X2 = R"({"nvars":2,"terms":[{"exps":[[1,1],[2,1]],"coef":1}]})";

}  // namespace

TEST(Csv, QuotesAndMeta) {
  CsvWriter w({"a", "b"});
  w.meta("seed", 3.0);
  w.row({"x,y", format_number(0.1)});
  EXPECT_EQ(w.str(), "# seed=3\na,b\n\"x,y\",0.1\n");
  EXPECT_THROW(w.row({"1"}), ShapeError);
  EXPECT_EQ(format_number(std::numeric_limits<double>::infinity()), "inf");
}

TEST(Partition, TextAndJsonForms) {
  EXPECT_EQ(partition_from_text("1,2|3", 3), SetPartition::parse("1,2|3", 3));
  EXPECT_EQ(partition_from_text("[[1,2],[3]]", 3), SetPartition::parse("1,2|3", 3));
  EXPECT_ANY_THROW(partition_from_text("1|1", 2));
}

TEST(ReadFile, MissingPathIsNamed) {
  try {
    read_file("/nonexistent/x.json");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_NE(std::string(e.what()).find("/nonexistent/x.json"), std::string::npos);
  }
}

TEST_F(Cli, NormOfIdentity) {
  const auto t = file("id.json", kIdentity);
  ASSERT_EQ(run({"norm", "--tensor", t, "--partition", "1|2"}), 0) << err_.str();
  EXPECT_NEAR(std::stod(cell(out_.str(), 0, "1|2", 1)), 1.0, 1e-12);
  EXPECT_NE(out_.str().find("# command=norm"), std::string::npos);
}

TEST_F(Cli, NormWritesCertificate) {
  const auto t = file("id.json", kIdentity);
  const auto out = (dir_ / "n.csv").string();
  ASSERT_EQ(run({"norm", "--tensor", t, "--partition", "1|2", "--out", out}), 0) << err_.str();
  EXPECT_TRUE(fs::exists(out));
  EXPECT_TRUE(fs::exists(out + ".cert.json"));
}

TEST_F(Cli, GaussianBoundTotal) {
  const auto p = file("f.json", kX1X2);
  ASSERT_EQ(run({"bounds", "--poly", p, "--p", "2"}), 0) << err_.str();
  EXPECT_NEAR(std::stod(cell(out_.str(), 1, "total", 5)), 4.0, 1e-12) << out_.str();
}

TEST_F(Cli, ErrorsExitWithTwo) {
  EXPECT_EQ(run({"norm", "--tensor", (dir_ / "missing.json").string(), "--partition", "1|2"}), 2);
  EXPECT_NE(err_.str().find("missing.json"), std::string::npos) << err_.str();
  EXPECT_EQ(run({"norm", "--bogus"}), 2);
  EXPECT_EQ(run({"norm", "--tensor", file("bad.json", "{"), "--partition", "1|2"}), 2);
  EXPECT_EQ(run({"bounds", "--poly", file("f.json", kX1X2), "--p", "1"}), 2);
  EXPECT_EQ(run({}), 2);
}

TEST_F(Cli, ConfigSuppliesDefaultsAndFlagsWin) {
  const auto t = file("id.json", kIdentity);
  const auto cfg = file("c.json", R"({"command":"norm","tensor":")" + t + R"(","partition":"1,2"})");
  ASSERT_EQ(run({"--config", cfg}), 0) << err_.str();
  EXPECT_NEAR(std::stod(cell(out_.str(), 0, "1,2", 1)), std::sqrt(2.0), 1e-10);  // 12 significant digits
  ASSERT_EQ(run({"norm", "--config", cfg, "--partition", "1|2"}), 0) << err_.str();
  EXPECT_NEAR(std::stod(cell(out_.str(), 0, "1|2", 1)), 1.0, 1e-12);
}

TEST_F(Cli, RerunsAreByteIdentical) {
  const auto p = file("f.json", kX1X2);
  const std::vector<std::string> args{"mc", "moments", "--poly", p, "--N", "5000", "--seed", "7"};
  ASSERT_EQ(run(args), 0) << err_.str();
  const std::string first = out_.str();
  auto threaded = args;
  threaded.insert(threaded.end(), {"--workers", "3"});
  ASSERT_EQ(run(threaded), 0) << err_.str();
  // Only the workers meta line may differ.
  auto strip = [](const std::string& s) {
    std::istringstream in(s);
    std::string line, r;
    while (std::getline(in, line))
      if (line.rfind("# workers=", 0) != 0) r += line + "\n";
    return r;
  };
  EXPECT_EQ(strip(out_.str()), strip(first));
}

TEST_F(Cli, OtherSubcommandsRun) {
  const auto sq = file("sq.json", R"({"nvars":1,"terms":[{"exps":[[1,2]],"coef":1}]})");
  EXPECT_EQ(run({"hermite", "--k", "3"}), 0) << err_.str();
  EXPECT_EQ(run({"hermite", "--poly", sq}), 0) << err_.str();
  EXPECT_EQ(run({"graphs", "cyclebound", "--k", "4", "--n", "20", "--p", "0.3", "--d", "2"}), 0) << err_.str();
  EXPECT_EQ(run({"graphs", "triangles", "--n", "10", "--p", "0.5", "--N", "200"}), 0) << err_.str();
  EXPECT_EQ(run({"rmt", "--f", sq, "--n", "10", "--replicas", "50", "--t", "1"}), 0) << err_.str();
  EXPECT_EQ(run({"tail", "--poly", file("f.json", kX1X2), "--t", "1", "10"}), 0) << err_.str();
  EXPECT_EQ(run({"mixednorm", "--tensor", file("id.json", kIdentity), "--split", "1||2", "--alpha", "1.5"}), 0)
      << err_.str();
}
