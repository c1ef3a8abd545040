// Top-level regression gate: `gradctl verify --suite all` must pass for every
// dominant weight with first coordinate <= 2 over n = 3..6. Each weight runs
// as its own process against a shared cache so ladder prefixes build once;
// weights that trip the capacity guard (exit 3) are reported and skipped.
#include "gradkit/weightcalc.hpp"

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <string>
#include <vector>

#include <sys/wait.h>

namespace fs = std::filesystem;
using namespace gradkit;

namespace {

std::string weight_arg(const DominantWeight& w) {
  std::string s;
  for (int i = 0; i < w.rank(); ++i) s += (i ? "," : "") + w.coords[i].str();
  return s;
}

std::string slurp(const fs::path& p) {
  std::string text;
  if (FILE* f = std::fopen(p.string().c_str(), "rb")) {
    char buf[4096];
    size_t got;
    while ((got = std::fread(buf, 1, sizeof buf, f)) > 0) text.append(buf, got);
    std::fclose(f);
  }
  return text;
}

} // namespace

int main() {
  const fs::path scratch = fs::temp_directory_path() / "gradkit_cli_grid";
  fs::remove_all(scratch);
  fs::create_directories(scratch);
  const fs::path cache = scratch / "cache";
  const fs::path log = scratch / "last.log";

  int ran = 0, skipped = 0, failed = 0;
  for (int n = 3; n <= 6; ++n) {
    for (const DominantWeight& w : enumerate_dominant_weights(n, HalfInt(2))) {
      const std::string cmd = std::string(GRADCTL_BIN) + " verify --n " + std::to_string(n) +
                              " --weight " + weight_arg(w) + " --suite all --json --cache-dir " +
                              cache.string() + " >" + log.string() + " 2>&1";
      const int status = std::system(cmd.c_str());
      const int code = (status >= 0 && WIFEXITED(status)) ? WEXITSTATUS(status) : -1;
      ++ran;
      if (code == 0) {
        std::printf("pass  n=%d rho=%s\n", n, w.str().c_str());
      } else if (code == 3) {
        ++skipped;
        std::printf("skip  n=%d rho=%s (capacity)\n", n, w.str().c_str());
      } else {
        ++failed;
        std::printf("FAIL  n=%d rho=%s exit=%d\n---- output ----\n%s\n", n, w.str().c_str(), code,
                    slurp(log).c_str());
      }
      std::fflush(stdout);
    }
  }
  std::printf("grid gate: %d weights, %d skipped on capacity, %d failed\n", ran, skipped, failed);
  return failed == 0 ? 0 : 1;
}
