#include "lorentz/trace_io.hpp"

#include <cstdio>

#include <json.hpp>

namespace lorentz::skew {

void write_trace_csv(std::ostream& out, const CocycleTrace& trace, const CrossSection& cs) {
    out << "# schema=lorentz-trace/1\n";
    out << "step,gx,gy,r,phi,collisions,path_length\n";
    char buf[256];
    for (size_t k = 0; k < trace.events.size(); ++k) {
        const ExitEvent& ev = trace.events[k];
        std::snprintf(buf, sizeof buf, "%zu,%d,%d,%.17g,%.17g,%d,%.17g\n", k, ev.direction.x, ev.direction.y,
                      cs.global_arc(ev.exit), ev.exit.phi, ev.collisions, ev.path_length);
        out << buf;
    }
    if (trace.truncated) out << "# truncated: " << trace.truncation_reason << "\n";
}

void write_trace_jsonl(std::ostream& out, const CocycleTrace& trace, const CrossSection& cs) {
    for (size_t k = 0; k < trace.events.size(); ++k) {
        const ExitEvent& ev = trace.events[k];
        nlohmann::json rec;
        rec["step"] = k;
        rec["g"] = {ev.direction.x, ev.direction.y};
        rec["r"] = cs.global_arc(ev.exit);
        rec["phi"] = ev.exit.phi;
        rec["collisions"] = ev.collisions;
        rec["path_length"] = ev.path_length;
        out << rec.dump() << "\n";
    }
    if (trace.truncated) {
        nlohmann::json rec;
        rec["truncated"] = trace.truncation_reason;
        out << rec.dump() << "\n";
    }
}

}  // namespace lorentz::skew
