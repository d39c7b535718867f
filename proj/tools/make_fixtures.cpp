// writes the bundled network fixtures as JSON
#include <filesystem>
#include <iostream>

#include "hexflow/network.hpp"
#include "hexflow/scenarios.hpp"

int main(int argc, char** argv) {
    namespace fs = std::filesystem;
    fs::path dir = argc > 1 ? argv[1] : "fixtures";
    fs::create_directories(dir);
    int bad = 0;
    for (const auto& f : hexflow::all_fixtures()) {
        auto rep = hexflow::validate_admissible(f.network);
        if (!rep.ok) {
            std::cerr << f.name << ": " << rep.violations.front().message << "\n";
            ++bad;
            continue;
        }
        hexflow::save_network(f.network, (dir / (f.name + ".json")).string());
    }
    return bad ? 1 : 0;
}
