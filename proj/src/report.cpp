#include <cstdio>
#include <fstream>
#include <functional>
#include <string>

#include <json.hpp>

#include "dtn/error.hpp"
#include "dtn/study.hpp"

namespace dtn {

namespace {

using nlohmann::ordered_json;

std::string num(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

std::string opt(const std::optional<double>& x) { return x ? num(*x) : std::string(); }

std::string hex64(std::uint64_t x) {
  char buf[24];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(x));
  return buf;
}

class ReportWriter {
 public:
  explicit ReportWriter(std::filesystem::path dir) : dir_(std::move(dir)) {}

  void write(const std::string& name, const std::function<void(std::ostream&)>& body) {
    const auto path = dir_ / name;
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
    body(out);
    out.flush();
    if (!out) throw IoError("failed writing '" + path.string() + "'");
    files_.push_back(name);
  }

  const std::vector<std::string>& files() const { return files_; }

 private:
  std::filesystem::path dir_;
  std::vector<std::string> files_;
};

int rank_of(const std::vector<ProtocolKind>& ranking, ProtocolKind p) {
  for (std::size_t i = 0; i < ranking.size(); ++i) {
    if (ranking[i] == p) return static_cast<int>(i) + 1;
  }
  return 0;
}

void write_csv(const StudyReport& report, ReportWriter& writer) {
  const auto& runs = report.runs;

  writer.write("runs.csv", [&](std::ostream& out) {
    out << "run,protocol,percent_error,time_mean_hr,time_std_hr,time_sem_hr\n";
    for (std::size_t k = 0; k < runs.size(); ++k) {
      for (const RunSummary& s : runs[k].summaries) {
        out << k << ',' << to_string(s.protocol) << ',' << num(s.percent_error) << ','
            << num(s.time_mean_hr) << ',' << opt(s.time_std_hr) << ',' << opt(s.time_sem_hr)
            << '\n';
      }
    }
  });

  writer.write("packets.csv", [&](std::ostream& out) {
    out << "run,packet,protocol,state,transmission_time_hr,route\n";
    for (std::size_t k = 0; k < runs.size(); ++k) {
      for (std::size_t i = 0; i < report.config.sim.packet_count; ++i) {
        for (const auto& records : runs[k].records) {
          const PacketRecord& r = records[i];
          out << k << ',' << r.packet_index << ',' << to_string(r.protocol) << ','
              << to_string(r.state) << ',' << num(r.transmission_time_hr) << ','
              << format_route(r.route) << '\n';
        }
      }
    }
  });

  writer.write("crm.csv", [&](std::ostream& out) {
    out << "run,protocol,sample_index,crm_hr\n";
    for (std::size_t k = 0; k < runs.size(); ++k) {
      for (const RunSummary& s : runs[k].summaries) {
        for (std::size_t i = 0; i < s.crm_hr.size(); ++i) {
          out << k << ',' << to_string(s.protocol) << ',' << i + 1 << ',' << num(s.crm_hr[i])
              << '\n';
        }
      }
    }
  });

  writer.write("paths.csv", [&](std::ostream& out) {
    out << "run,protocol,route,count,packet_count\n";
    for (std::size_t k = 0; k < runs.size(); ++k) {
      for (const RunSummary& s : runs[k].summaries) {
        out << k << ',' << to_string(s.protocol) << ',' << format_route(s.most_frequent_route)
            << ',' << s.most_frequent_count << ',' << report.config.sim.packet_count << '\n';
      }
    }
  });

  for (std::size_t k = 0; k < runs.size(); ++k) {
    const NetworkState& net = runs[k].network;
    writer.write("network_run" + std::to_string(k) + "_nodes.csv", [&](std::ostream& out) {
      out << "node_id,kind,x_km,y_km\n";
      for (const Node& n : net.nodes()) {
        out << n.id << ',' << to_string(n.kind) << ',' << num(n.position.x_km) << ','
            << num(n.position.y_km) << '\n';
      }
    });
    writer.write("network_run" + std::to_string(k) + "_links.csv", [&](std::ostream& out) {
      out << "node_a,node_b,default_distance_km,default_quality\n";
      for (const LinkState& l : net.links()) {
        out << l.a << ',' << l.b << ',' << num(l.default_distance_km) << ','
            << num(l.default_quality) << '\n';
      }
    });
  }

  writer.write("study_summary.csv", [&](std::ostream& out) {
    out << "protocol,metric,mean,std,sem,n\n";
    for (ProtocolKind p : kAllProtocols) {
      for (Metric m : kAllMetrics) {
        const MetricCell& c = report.summary.at(p, m);
        out << to_string(p) << ',' << to_string(m) << ',' << num(c.mean) << ','
            << (c.stats ? num(c.stats->std) : "") << ',' << (c.stats ? num(c.stats->sem()) : "")
            << ',' << report.summary.run_count << '\n';
      }
    }
  });

  if (report.ttests) {
    writer.write("ttest.csv", [&](std::ostream& out) {
      out << "metric,protocol_a,protocol_b,t,df,p,significant\n";
      for (Metric m : kAllMetrics) {
        for (ProtocolKind a : kAllProtocols) {
          for (ProtocolKind b : kAllProtocols) {
            if (a == b) continue;
            const auto& cell = report.ttests->at(m, a, b);
            out << to_string(m) << ',' << to_string(a) << ',' << to_string(b) << ',';
            if (cell) {
              out << num(cell->t) << ',' << num(cell->df) << ',' << num(cell->p) << ','
                  << (cell->significant ? "true" : "false") << '\n';
            } else {
              out << ",,,false\n";
            }
          }
        }
      }
    });
  }

  writer.write("decision.csv", [&](std::ostream& out) {
    out << "protocol,v_percent_error,v_transmission_time,mavf,mavf_corrected,rank\n";
    for (const DecisionRow& row : report.decision.rows) {
      out << to_string(row.protocol) << ',' << num(row.v_percent_error) << ','
          << num(row.v_transmission_time) << ',' << num(row.mavf) << ','
          << num(report.decision_corrected.row(row.protocol).mavf) << ','
          << rank_of(report.ranking_corrected, row.protocol) << '\n';
    }
  });
}

ordered_json table_json(const DecisionTable& table, const std::vector<ProtocolKind>& ranking) {
  ordered_json rows = ordered_json::array();
  for (const DecisionRow& r : table.rows) {
    rows.push_back({{"protocol", to_string(r.protocol)},
                    {"percent_error_mean", r.percent_error_mean},
                    {"transmission_time_mean_hr", r.transmission_time_mean},
                    {"v_percent_error", r.v_percent_error},
                    {"v_transmission_time", r.v_transmission_time},
                    {"mavf", r.mavf},
                    {"rank", rank_of(ranking, r.protocol)}});
  }
  return rows;
}

ordered_json optional_json(const std::optional<double>& x) {
  return x ? ordered_json(*x) : ordered_json(nullptr);
}

void write_json(const StudyReport& report, ReportWriter& writer) {
  ordered_json doc;
  doc["provenance"] = {{"tool_version", report.provenance.tool_version},
                       {"master_seed", report.provenance.master_seed},
                       {"config_hash", hex64(report.provenance.config_hash)}};

  ordered_json runs = ordered_json::array();
  for (std::size_t k = 0; k < report.runs.size(); ++k) {
    const RunResult& run = report.runs[k];
    ordered_json nodes = ordered_json::array();
    for (const Node& n : run.network.nodes()) {
      nodes.push_back({{"node_id", n.id},
                       {"kind", to_string(n.kind)},
                       {"x_km", n.position.x_km},
                       {"y_km", n.position.y_km}});
    }
    ordered_json links = ordered_json::array();
    for (const LinkState& l : run.network.links()) {
      links.push_back({{"node_a", l.a},
                       {"node_b", l.b},
                       {"default_distance_km", l.default_distance_km},
                       {"default_quality", l.default_quality}});
    }
    ordered_json protocols = ordered_json::array();
    for (std::size_t p = 0; p < 3; ++p) {
      const RunSummary& s = run.summaries[p];
      ordered_json packets = ordered_json::array();
      for (const PacketRecord& r : run.records[p]) {
        packets.push_back({{"packet", r.packet_index},
                           {"state", to_string(r.state)},
                           {"transmission_time_hr", r.transmission_time_hr},
                           {"route", r.route.nodes}});
      }
      protocols.push_back({{"protocol", to_string(s.protocol)},
                           {"percent_error", s.percent_error},
                           {"time_mean_hr", s.time_mean_hr},
                           {"time_std_hr", optional_json(s.time_std_hr)},
                           {"time_sem_hr", optional_json(s.time_sem_hr)},
                           {"most_frequent_route", s.most_frequent_route.nodes},
                           {"most_frequent_count", s.most_frequent_count},
                           {"crm_hr", s.crm_hr},
                           {"packets", std::move(packets)}});
    }
    runs.push_back({{"run", k},
                    {"network", {{"nodes", std::move(nodes)}, {"links", std::move(links)}}},
                    {"protocols", std::move(protocols)}});
  }
  doc["runs"] = std::move(runs);

  ordered_json summary = ordered_json::array();
  for (ProtocolKind p : kAllProtocols) {
    for (Metric m : kAllMetrics) {
      const MetricCell& c = report.summary.at(p, m);
      summary.push_back({{"protocol", to_string(p)},
                         {"metric", to_string(m)},
                         {"mean", c.mean},
                         {"std", c.stats ? ordered_json(c.stats->std) : ordered_json(nullptr)},
                         {"sem", c.stats ? ordered_json(c.stats->sem()) : ordered_json(nullptr)},
                         {"n", report.summary.run_count}});
    }
  }
  doc["study_summary"] = std::move(summary);

  if (report.ttests) {
    ordered_json tests = ordered_json::array();
    for (Metric m : kAllMetrics) {
      for (ProtocolKind a : kAllProtocols) {
        for (ProtocolKind b : kAllProtocols) {
          if (a == b) continue;
          const auto& cell = report.ttests->at(m, a, b);
          ordered_json row = {{"metric", to_string(m)},
                              {"protocol_a", to_string(a)},
                              {"protocol_b", to_string(b)}};
          if (cell) {
            row["t"] = cell->t;
            row["df"] = cell->df;
            row["p"] = cell->p;
            row["significant"] = cell->significant;
          } else {
            row["t"] = row["df"] = row["p"] = nullptr;
            row["significant"] = false;
          }
          tests.push_back(std::move(row));
        }
      }
    }
    doc["ttests"] = std::move(tests);
  } else {
    doc["ttests"] = "skipped";
  }

  doc["decision"] = table_json(report.decision, report.ranking);
  doc["decision_corrected"] = table_json(report.decision_corrected, report.ranking_corrected);
  doc["warnings"] = report.warnings;

  writer.write("report.json", [&](std::ostream& out) { out << doc.dump(2) << '\n'; });
}

}  // namespace

std::vector<std::string> write_report(const StudyReport& report,
                                      const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec || !std::filesystem::is_directory(dir)) {
    throw IoError("cannot create output directory '" + dir.string() + "'" +
                  (ec ? ": " + ec.message() : std::string()));
  }

  ReportWriter writer(dir);
  const OutputFormat format = report.config.format;
  if (format == OutputFormat::Csv || format == OutputFormat::Both) write_csv(report, writer);
  if (format == OutputFormat::Json || format == OutputFormat::Both) write_json(report, writer);

  std::vector<std::string> listed = writer.files();
  listed.push_back("manifest.txt");
  writer.write("manifest.txt", [&](std::ostream& out) {
    out << "tool=dtn-tradesim\n"
        << "tool_version=" << report.provenance.tool_version << '\n'
        << "master_seed=" << report.provenance.master_seed << '\n'
        << "config_hash=" << hex64(report.provenance.config_hash) << '\n'
        << "ttest=" << (report.ttests ? "computed" : "skipped (run_count < 2)") << '\n';
    out << "\n[config]\n" << describe(report.config);
    out << "\n[warnings]\n";
    for (const std::string& w : report.warnings) out << w << '\n';
    out << "\n[files]\n";
    for (const std::string& f : listed) out << f << '\n';
  });
  return listed;
}

}  // namespace dtn
