#pragma once

#include <filesystem>
#include <string>

#include "spdc/config.hpp"

namespace spdcsim {

struct Run {
  std::string command;
  spdc::KeyValueConfig config;  // fully resolved
  std::filesystem::path out_dir;
  bool json = false;
};

int cmd_l0(const Run& run);
int cmd_spectrum(const Run& run);
int cmd_fig1(const Run& run);
int cmd_fig2(const Run& run);
int cmd_fig3(const Run& run);
int cmd_fig4(const Run& run);
int cmd_hom(const Run& run);
int cmd_sumfreq(const Run& run);
int cmd_mc(const Run& run);

}  // namespace spdcsim
