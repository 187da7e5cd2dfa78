// restore-workbench: HTTP service behind the interactive workbench UI.
//
// Flags may also come from the environment: RESTORE_LISTEN, RESTORE_MAX_DIM,
// RESTORE_SPILL_DIR, RESTORE_UI_DIR.

#include "restore/service.hpp"

#include <CLI11.hpp>

#include <csignal>
#include <iostream>
#include <string>

namespace {

restore::WorkbenchService* g_service = nullptr;

void on_signal(int) {
    if (g_service) g_service->stop();
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Restoration workbench service"};
    std::string listen = "127.0.0.1:8080";
    std::string spill_dir;
    std::string ui_dir;
    restore::ServiceConfig config;
    app.add_option("--listen", listen, "HOST:PORT")->envname("RESTORE_LISTEN")->capture_default_str();
    app.add_option("--max-dim", config.max_dim, "Largest accepted image side")
        ->envname("RESTORE_MAX_DIM")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    app.add_option("--max-images", config.session.max_images, "Session image cap")->capture_default_str();
    app.add_option("--max-resident", config.session.max_resident,
                   "Rasters kept in memory before spilling")
        ->capture_default_str();
    app.add_option("--spill-dir", spill_dir, "Directory for spilled rasters and uploaded blobs")
        ->envname("RESTORE_SPILL_DIR");
    app.add_option("--ui-dir", ui_dir, "Static UI bundle served at /")
        ->envname("RESTORE_UI_DIR")
        ->check(CLI::ExistingDirectory);
    CLI11_PARSE(app, argc, argv);

    if (!spill_dir.empty()) config.session.spill_dir = spill_dir;
    if (!ui_dir.empty()) config.ui_dir = ui_dir;

    const auto colon = listen.rfind(':');
    if (colon == std::string::npos) {
        std::cerr << "--listen expects HOST:PORT\n";
        return 1;
    }
    const std::string host = listen.substr(0, colon);
    int port = 0;
    try {
        port = std::stoi(listen.substr(colon + 1));
    } catch (const std::exception&) {
        std::cerr << "--listen: bad port\n";
        return 1;
    }

    restore::WorkbenchService service(config);
    if (!service.bind(host, port)) {
        std::cerr << "cannot bind " << listen << "\n";
        return 2;
    }
    g_service = &service;
    std::signal(SIGINT, on_signal);
    std::signal(SIGTERM, on_signal);
    std::cout << "listening on http://" << listen << std::endl;
    return service.serve() ? 0 : 2;
}
