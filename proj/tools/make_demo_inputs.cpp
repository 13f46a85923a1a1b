// Writes a four-story demo frame and three synthetic records to a directory.
#include <filesystem>
#include <iostream>

#include "CLI11.hpp"
#include "fsdamp/io.hpp"
#include "fsdamp/synthetic.hpp"

int main(int argc, char** argv) {
  std::string dir = "data";
  CLI::App app{"Generate demo inputs"};
  app.add_option("--out", dir, "Output directory");
  CLI11_PARSE(app, argc, argv);

  using namespace fsdamp;
  std::filesystem::create_directories(dir);
  const StructuralModel model = make_shear_frame(
      {{100.0, 100.0, 100.0, 80.0}, {60000.0, 55000.0, 45000.0, 35000.0}, 0.05, 0.022});
  write_model(model, std::filesystem::path(dir) / "frame4.json");
  for (std::uint32_t s = 1; s <= 3; ++s) {
    SyntheticRecordSpec spec;
    spec.name = "synth" + std::to_string(s);
    spec.seed = s;
    spec.duration = 10.0;
    spec.decay_start = 6.0;
    write_ground_motion(make_synthetic_record(spec),
                        std::filesystem::path(dir) / (spec.name + ".txt"));
  }
  std::cout << "wrote demo inputs to " << dir << '\n';
  return 0;
}
