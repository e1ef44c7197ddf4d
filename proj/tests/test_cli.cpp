#include <gtest/gtest.h>
#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <nlohmann/json.hpp>

namespace fs = std::filesystem;

namespace {

struct RunResult {
  int code = -1;
  std::string out;
};

RunResult run(const std::string& args, const std::string& env = "") {
  const std::string cmd = env + " \"" GRONWALL_CLI_PATH "\" " + args + " 2>/dev/null";
  RunResult res;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (pipe == nullptr) return res;
  char buf[4096];
  std::size_t got;
  while ((got = fread(buf, 1, sizeof buf, pipe)) > 0) res.out.append(buf, got);
  const int status = pclose(pipe);
  res.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return res;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

fs::path scratch(const std::string& name) {
  const auto dir = fs::temp_directory_path() / ("gronwall_cli_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

}  // namespace

TEST(Cli, CoefficientsListing) {
  const auto r = run("coeffs --c -1,0 --n 5");
  ASSERT_EQ(r.code, 0);
  std::istringstream in(r.out);
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line.rfind("# c=-1,0 N=5 residual=", 0), 0u) << line;
  std::getline(in, line);
  EXPECT_EQ(line, "k,re,im");
  std::getline(in, line);
  EXPECT_EQ(line, "1,0.5,0");
  std::getline(in, line);
  EXPECT_EQ(line, "2,0,0");
  std::getline(in, line);
  EXPECT_EQ(line, "3,0.125,0");
}

TEST(Cli, Area) {
  const auto r = run("area --c 0,0 --r 1 --n 50");
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "3.1415926535897931\n");
  const auto cheb = run("area --c -2,0 --r 1 --n 64 --fast");
  ASSERT_EQ(cheb.code, 0);
  EXPECT_LE(std::abs(std::stod(cheb.out)), 1e-12);
}

TEST(Cli, ExitCodes) {
  EXPECT_EQ(run("").code, 2);
  EXPECT_EQ(run("area --c nonsense --r 1 --n 5").code, 2);
  EXPECT_EQ(run("area --c 0,0 --r 0.5 --n 5").code, 2);
  EXPECT_EQ(run("coeffs --c 0,0 --n 0").code, 2);
  EXPECT_EQ(run("pixel-area --region green --lambda 0,0 --resolution 64 --max-iter 10").code, 2);
  EXPECT_EQ(run("pixel-area --region julia --lambda 6,0 --resolution 64 --max-iter 10").code, 2);
  EXPECT_EQ(run("area --c 0,0 --r 1 --n 30000").code, 3);
  EXPECT_EQ(run("area --c 0,0 --r 1 --n 300000 --allow-large").code, 3);
  EXPECT_EQ(run("area --c 0,0 --r 1 --n 30000 --allow-large --fast").code, 0);
  EXPECT_EQ(run("--help").code, 0);
}

TEST(Cli, Lavaurs) {
  const auto r = run("lavaurs --m 5 --tau 0 --z 0,0");
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "0,0\n");
  EXPECT_NE(run("lavaurs --m 64 --tau 0 --z 3,0").code, 0);
}

TEST(Cli, PixelAreaJsonAndPgm) {
  const auto dir = scratch("pixel");
  const auto pgm = dir / "disk.pgm";
  const auto r = run("pixel-area --region julia --lambda 0,0 --resolution 64 --max-iter 50 --pgm " +
                     pgm.string());
  ASSERT_EQ(r.code, 0);
  const auto j = nlohmann::json::parse(r.out);
  for (const char* key : {"value", "lower", "upper", "resolution", "undecided_area"})
    EXPECT_TRUE(j.contains(key)) << key;
  EXPECT_EQ(j["resolution"].get<int>(), 64);
  const std::string bytes = slurp(pgm);
  EXPECT_EQ(bytes.size(), std::string("P5\n64 64\n255\n").size() + 64u * 64u);

  const auto it = run("pixel-area --region iter --lambda 0,0 --p 1 --radius 12 --resolution 128 "
                      "--max-iter 10");
  ASSERT_EQ(it.code, 0);
  EXPECT_NEAR(nlohmann::json::parse(it.out)["value"].get<double>(), 12.0 * 3.141592653589793, 1.0);
  fs::remove_all(dir);
}

TEST(Cli, SweepCsv) {
  const auto dir = scratch("sweep");
  const auto csv = dir / "s.csv";
  ASSERT_EQ(run("sweep --t0 0 --t1 0.5 --steps 3 --levels 1,20 --out " + csv.string()).code, 0);
  const std::string text = slurp(csv);
  EXPECT_EQ(text.rfind("t,re_lambda,im_lambda,re_c,im_c,A_N1,A_N20\n", 0), 0u);
  EXPECT_EQ(std::count(text.begin(), text.end(), '\n'), 4);
  EXPECT_EQ(run("sweep --t0 0 --t1 0.5 --steps 3 --levels 20,1 --out " + csv.string()).code, 2);
  EXPECT_EQ(run("sweep --t0 0 --t1 0.5 --steps 3 --levels 1,50000 --out " + csv.string()).code, 3);
  fs::remove_all(dir);
}

TEST(Cli, CacheDirectory) {
  const auto dir = scratch("cache");
  const std::string env = "GRONWALL_CACHE_DIR=" + dir.string();
  const auto first = run("area --c -0.5,0.25 --r 1 --n 100", env);
  ASSERT_EQ(first.code, 0);
  EXPECT_TRUE(fs::exists(dir / "c_-0.5_0.25.coeff"));
  const auto second = run("area --c -0.5,0.25 --r 1 --n 100", env);
  EXPECT_EQ(first.out, second.out);
  fs::remove_all(dir);
}

TEST(Cli, ParabolicReport) {
  const auto dir = scratch("parabolic");
  const auto out = dir / "r.json";
  ASSERT_EQ(run("parabolic --m 8 --tau 0 --gamma 0.34657359027997264 --radius 12 --tol 0.5 "
                "--max-resolution 256 --max-iter 200 --out " + out.string())
                .code,
            0);
  const auto j = nlohmann::json::parse(slurp(out));
  for (const char* key : {"alpha", "m", "tau", "gamma", "N", "A_1N", "area_K_lambda", "area_K_1",
                          "iter_area", "measured_gap"})
    EXPECT_TRUE(j.contains(key)) << key;
  EXPECT_EQ(j["N"].get<int>(), 16);
  for (const char* key : {"value", "lower", "upper"}) EXPECT_TRUE(j["area_K_1"].contains(key));
  fs::remove_all(dir);
}

TEST(Cli, DoubleMandelbrot) {
  const auto dir = scratch("mandel");
  const auto pgm = dir / "m.pgm";
  ASSERT_EQ(run("double-mandelbrot --resolution 96 --max-iter 100 --pgm " + pgm.string()).code, 0);
  EXPECT_EQ(slurp(pgm).rfind("P5\n96 64\n255\n", 0), 0u);
  EXPECT_EQ(run("double-mandelbrot --resolution 10 --max-iter 100 --pgm " + pgm.string()).code, 2);
  fs::remove_all(dir);
}
