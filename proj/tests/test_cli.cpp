#include <gtest/gtest.h>

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace fs = std::filesystem;

namespace {

struct Outcome {
  int status = -1;
  std::string out;
};

Outcome shell(const std::string& line) {
  Outcome result;
  FILE* pipe = popen(line.c_str(), "r");
  if (!pipe) return result;
  std::array<char, 4096> buf{};
  std::size_t got;
  while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0) result.out.append(buf.data(), got);
  const int raw = pclose(pipe);
  result.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  return result;
}

Outcome run(const std::string& args) {
  return shell(std::string(VMDS_CLI) + " " + args + " 2>/dev/null");
}

std::string first_line(const std::string& s) { return s.substr(0, s.find('\n')); }

class Cli : public ::testing::Test {
protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("vmds-cli-" + std::to_string(::testing::UnitTest::GetInstance()->random_seed()) +
            "-" + ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }
  std::string path(const std::string& name) const { return (dir_ / name).string(); }
  void write(const std::string& name, const std::string& text) const {
    std::ofstream(path(name)) << text;
  }
  fs::path dir_;
};

} // namespace

TEST_F(Cli, VerifyFigure1) {
  ASSERT_EQ(run("construct figure1 -o " + path("f1.vmds")).status, 0);
  const Outcome v = run("verify " + path("f1.vmds"));
  EXPECT_EQ(v.status, 0);
  EXPECT_EQ(first_line(v.out), "MDS: pass; bandwidth: pass; access: fail; update: fail");
}

TEST_F(Cli, ConstructPipesIntoVerify) {
  const Outcome v = shell(std::string(VMDS_CLI) + " construct figure1 | " + VMDS_CLI + " verify -");
  EXPECT_EQ(v.status, 0);
  EXPECT_EQ(first_line(v.out), "MDS: pass; bandwidth: pass; access: fail; update: fail");
}

TEST_F(Cli, VerifyFailureExitsOne) {
  write("grid.vmds",
        "vmds v1\nfield 7 1\nparams 2 2 2\n"
        "C 1 1\n1 0\n0 1\nC 1 2\n1 0\n0 1\nC 2 1\n1 0\n0 1\nC 2 2\n1 0\n0 1\n");
  const Outcome v = run("verify " + path("grid.vmds"));
  EXPECT_EQ(v.status, 1);
  EXPECT_EQ(first_line(v.out), "MDS: fail; bandwidth: n/a; access: n/a; update: pass");
}

TEST_F(Cli, Bounds) {
  Outcome b = run("bounds --l 4 --r 2 --family general");
  EXPECT_EQ(b.status, 0);
  EXPECT_EQ(first_line(b.out), "24");
  EXPECT_EQ(first_line(run("bounds --l 4 --r 2 --family diagonal").out), "2");
  EXPECT_EQ(first_line(run("bounds --l 4 --r 2 --family access").out), "4");
  EXPECT_EQ(first_line(run("bounds --l 4 --r 2 --family diagonal --non-constant").out), "3");
  EXPECT_EQ(first_line(run("bounds --l 1099511627776 --r 2 --family access").out), "80");
  EXPECT_EQ(run("bounds --l 6 --r 2 --family diagonal").status, 2);
}

TEST_F(Cli, RepairFigure1Node3) {
  ASSERT_EQ(run("construct figure1 -o " + path("f1.vmds")).status, 0);
  const Outcome r = run("repair " + path("f1.vmds") + " --node 3 --zero");
  EXPECT_EQ(r.status, 0);
  EXPECT_NE(r.out.find("total bw=5 access=10"), std::string::npos);
  EXPECT_NE(r.out.find("reconstructed=[0,0]"), std::string::npos);

  const Outcome a = run("repair " + path("f1.vmds") + " --node 2 --random 9");
  const Outcome b = run("repair " + path("f1.vmds") + " --node 2 --random 9");
  EXPECT_EQ(a.status, 0);
  EXPECT_EQ(a.out, b.out);
  EXPECT_NE(a.out.find("total bw=5 access=5"), std::string::npos);

  write("data.txt", "1 5\n2 6\n3 0\n4 1\n");
  const Outcome d = run("repair " + path("f1.vmds") + " --node 1 --data " + path("data.txt"));
  EXPECT_EQ(d.status, 0);
  EXPECT_NE(d.out.find("reconstructed=[1,5]"), std::string::npos);

  EXPECT_EQ(run("repair " + path("f1.vmds") + " --node 7 --zero").status, 2);
}

TEST_F(Cli, ConstructSubcommands) {
  EXPECT_EQ(run("construct diagonal --r 2 --t 2 --p 5 -o " + path("d.vmds")).status, 0);
  EXPECT_EQ(first_line(run("verify " + path("d.vmds")).out),
            "MDS: pass; bandwidth: pass; access: fail; update: pass");
  EXPECT_EQ(run("analyze " + path("d.vmds") + " detcriterion").status, 0);
  EXPECT_EQ(run("analyze " + path("d.vmds") + " partitions").status, 0);
  EXPECT_EQ(run("analyze " + path("d.vmds") + " degrees").status, 0);
  EXPECT_EQ(run("analyze " + path("d.vmds") + " intersections").status, 0);

  ASSERT_EQ(run("construct figure1 -o " + path("f1.vmds")).status, 0);
  EXPECT_EQ(run("construct transform " + path("f1.vmds") + " -o " + path("t.vmds")).status, 0);
  const Outcome t = run("verify " + path("t.vmds"));
  EXPECT_EQ(t.status, 0);
  EXPECT_NE(t.out.find("code (5,3,2)"), std::string::npos);

  EXPECT_EQ(run("construct shorten " + path("f1.vmds") + " --keep 1,2 -o " + path("s.vmds")).status,
            0);
  EXPECT_EQ(first_line(run("verify " + path("s.vmds")).out),
            "MDS: pass; bandwidth: pass; access: pass; update: fail");

  const Outcome r1 = run("construct random --k 2 --r 2 --l 2 --p 7 --seed 3");
  const Outcome r2 = run("construct random --k 2 --r 2 --l 2 --p 7 --seed 3");
  EXPECT_EQ(r1.status, 0);
  EXPECT_EQ(r1.out, r2.out);
}

TEST_F(Cli, SearchWritesCertificate) {
  const Outcome s = run("search --l 2 --r 2 --p 5 --family diagonal --constant -o " + path("c.txt"));
  EXPECT_EQ(s.status, 0);
  std::ifstream in(path("c.txt"));
  std::stringstream text;
  text << in.rdbuf();
  EXPECT_EQ(first_line(text.str()), "certificate v1");
  EXPECT_NE(text.str().find("achieved_k 1\n"), std::string::npos);
  EXPECT_NE(text.str().find("exhausted true\n"), std::string::npos);
}

TEST_F(Cli, UsageAndParseErrorsExitTwo) {
  EXPECT_EQ(run("").status, 2);
  EXPECT_EQ(run("frobnicate").status, 2);
  EXPECT_EQ(run("bounds --l 4").status, 2);
  EXPECT_EQ(run("bounds --l 4 --r 2 --family zigzag").status, 2);
  write("bad.vmds", "vmds v9\n");
  EXPECT_EQ(run("verify " + path("bad.vmds")).status, 2);
  EXPECT_EQ(run("verify " + path("missing.vmds")).status, 2);
  EXPECT_EQ(run("construct diagonal --r 2 --t 1 --p 4").status, 2);
}

TEST_F(Cli, NoPartialOutputOnFailure) {
  const Outcome r = run("construct diagonal --r 2 --t 1 --p 2 -o " + path("out.vmds"));
  EXPECT_EQ(r.status, 1);
  EXPECT_FALSE(fs::exists(path("out.vmds")));
  EXPECT_FALSE(fs::exists(path("out.vmds.tmp")));
  EXPECT_TRUE(fs::is_empty(dir_));
}
