#include "hoq/serialize.hpp"

#include <fstream>
#include <stdexcept>

namespace hoq {

namespace {

cx entry_from_json(const json& e) {
  if (e.is_number()) return cx{e.get<double>(), 0.0};
  if (e.is_array() && e.size() >= 1 && e.size() <= 2) {
    const double re = e[0].get<double>();
    const double im = e.size() == 2 ? e[1].get<double>() : 0.0;
    return cx{re, im};
  }
  throw std::invalid_argument("matrix entry must be a number or [re, im]");
}

Pol pol_from_string(const std::string& s) {
  if (s == "in") return Pol::In;
  if (s == "out") return Pol::Out;
  throw std::invalid_argument("polarity must be \"in\" or \"out\"");
}

}  // namespace

json matrix_to_json(const ComplexMatrix& m) {
  json entries = json::array();
  for (const auto& v : m.entries())
    entries.push_back(json::array({v.real(), v.imag()}));
  return json{{"rows", m.rows()}, {"cols", m.cols()}, {"entries", entries}};
}

ComplexMatrix matrix_from_json(const json& j) {
  const auto rows = j.at("rows").get<std::size_t>();
  const auto cols = j.at("cols").get<std::size_t>();
  const auto& entries = j.at("entries");
  if (!entries.is_array() || entries.size() != rows * cols)
    throw std::invalid_argument("matrix entries length does not match shape");
  std::vector<cx> a;
  a.reserve(entries.size());
  for (const auto& e : entries) a.push_back(entry_from_json(e));
  return ComplexMatrix(rows, cols, std::move(a));
}

json real_matrix_to_json(const RealMatrix& m) {
  json entries = json::array();
  for (const auto& v : m.entries()) entries.push_back(v);
  return json{{"rows", m.rows()}, {"cols", m.cols()}, {"entries", entries}};
}

RealMatrix real_matrix_from_json(const json& j) {
  const auto rows = j.at("rows").get<std::size_t>();
  const auto cols = j.at("cols").get<std::size_t>();
  const auto& entries = j.at("entries");
  if (!entries.is_array() || entries.size() != rows * cols)
    throw std::invalid_argument("matrix entries length does not match shape");
  std::vector<double> a;
  a.reserve(entries.size());
  for (const auto& e : entries) {
    const cx v = entry_from_json(e);
    if (v.imag() != 0.0)
      throw std::invalid_argument("real matrix has a complex entry");
    a.push_back(v.real());
  }
  return RealMatrix(rows, cols, std::move(a));
}

json tensor_to_json(const CTensor& t) {
  json j = matrix_to_json(t.mat());
  json legs = json::array();
  for (const auto& l : t.legs())
    legs.push_back(json{{"label", l.label},
                        {"dim", l.dim},
                        {"polarity", l.pol == Pol::In ? "in" : "out"}});
  j["legs"] = legs;
  return j;
}

CTensor tensor_from_json(const json& j) {
  ComplexMatrix m = matrix_from_json(j);
  std::vector<Leg> legs;
  for (const auto& l : j.at("legs"))
    legs.push_back({l.at("label").get<std::string>(),
                    l.at("dim").get<std::size_t>(),
                    pol_from_string(l.at("polarity").get<std::string>())});
  return CTensor(std::move(legs), std::move(m));
}

json system_to_json(const SystemType& t) {
  json f = json::array();
  for (const auto& x : t.factors())
    f.push_back(json{{"label", x.label}, {"dim", x.dim}});
  return f;
}

SystemType system_from_json(const json& j) {
  std::vector<SysFactor> f;
  for (const auto& x : j)
    f.push_back({x.at("label").get<std::string>(),
                 x.at("dim").get<std::size_t>()});
  return SystemType(std::move(f));
}

json channel_to_json(const Channel& c) {
  return json{{"system",
               {{"in_factors", system_to_json(c.in_type())},
                {"out_factors", system_to_json(c.out_type())},
                {"deterministic", c.deterministic()}}},
              {"choi", matrix_to_json(c.choi_matrix())}};
}

Channel channel_from_json(const json& j) {
  const auto& sys = j.at("system");
  SystemType in = system_from_json(sys.at("in_factors"));
  SystemType out = system_from_json(sys.at("out_factors"));
  ComplexMatrix choi = matrix_from_json(j.at("choi"));
  const std::size_t d = in.total_dim() * out.total_dim();
  if (choi.rows() != d || choi.cols() != d)
    throw std::invalid_argument("channel choi does not match system dims");
  return Channel(in, out, choi, sys.value("deterministic", false));
}

json relation_to_json(const SignalingRelation& r) {
  json forbidden = json::array();
  for (const auto& [from, to] : r.forbidden)
    forbidden.push_back(json{{"from", from}, {"to", to}});
  return json{{"in_parties", r.in_parties},
              {"out_parties", r.out_parties},
              {"forbidden", forbidden}};
}

SignalingRelation relation_from_json(const json& j) {
  SignalingRelation r;
  for (const auto& p : j.at("in_parties")) r.in_parties.push_back(p);
  for (const auto& p : j.at("out_parties")) r.out_parties.push_back(p);
  for (const auto& e : j.at("forbidden"))
    r.forbidden.emplace_back(e.at("from").get<std::string>(),
                             e.at("to").get<std::string>());
  return r;
}

json set_spec_to_json(const ChannelSetSpec& k) {
  json j{{"in_factors", system_to_json(k.base_in)},
         {"out_factors", system_to_json(k.base_out)},
         {"convex", k.convex},
         {"normal", k.normal}};
  switch (k.kind) {
    case SetKind::All:
      j["kind"] = "all";
      break;
    case SetKind::NonSignaling:
      j["kind"] = "non_signaling";
      j["relation"] = relation_to_json(k.relation);
      break;
    case SetKind::OneWay:
      j["kind"] = "one_way";
      j["relation"] = relation_to_json(k.relation);
      break;
    case SetKind::Custom:
      throw std::invalid_argument("custom channel sets cannot be serialized");
  }
  return j;
}

ChannelSetSpec set_spec_from_json(const json& j) {
  SystemType in = system_from_json(j.at("in_factors"));
  SystemType out = system_from_json(j.at("out_factors"));
  const std::string kind = j.value("kind", "all");
  if (kind == "all") return ChannelSetSpec::all(in, out);
  if (kind == "non_signaling")
    return ChannelSetSpec::non_signaling(in, out,
                                         relation_from_json(j.at("relation")));
  if (kind == "one_way")
    return ChannelSetSpec::one_way(in, out,
                                   relation_from_json(j.at("relation")));
  throw std::invalid_argument("unknown channel set kind " + kind);
}

json supermap_to_json(const Supermap& s) {
  json legs = json::array();
  for (const auto& f : s.source.base_in.factors())
    legs.push_back(json{{"name", f.label + "*"}, {"dim", f.dim}});
  for (const auto& f : s.source.base_out.factors())
    legs.push_back(json{{"name", f.label}, {"dim", f.dim}});
  for (const auto& f : s.target.base_in.factors())
    legs.push_back(json{{"name", f.label + "*"}, {"dim", f.dim}});
  for (const auto& f : s.target.base_out.factors())
    legs.push_back(json{{"name", f.label}, {"dim", f.dim}});
  return json{{"source", set_spec_to_json(s.source)},
              {"target", set_spec_to_json(s.target)},
              {"legs", legs},
              {"choi", matrix_to_json(s.choi_matrix())}};
}

Supermap supermap_from_json(const json& j) {
  ChannelSetSpec source = set_spec_from_json(j.at("source"));
  ChannelSetSpec target = set_spec_from_json(j.at("target"));
  ComplexMatrix choi = matrix_from_json(j.at("choi"));
  Channel cp(source.base_in.concat(source.base_out),
             target.base_in.concat(target.base_out), choi, false);
  return make_supermap(std::move(cp), std::move(source), std::move(target));
}

json comb_to_json(const Comb& c) {
  return json{{"pre", channel_to_json(c.pre)},
              {"post", channel_to_json(c.post)},
              {"env_factors", c.env.n_factors()}};
}

Comb comb_from_json(const json& j) {
  return make_comb(channel_from_json(j.at("pre")),
                   channel_from_json(j.at("post")),
                   j.at("env_factors").get<std::size_t>());
}

json stoch_channel_to_json(const classical::StochChannel& c) {
  return json{{"system",
               {{"in_factors", system_to_json(c.in_type)},
                {"out_factors", system_to_json(c.out_type)},
                {"deterministic", c.deterministic}}},
              {"matrix", real_matrix_to_json(c.matrix())}};
}

classical::StochChannel stoch_channel_from_json(const json& j) {
  const auto& sys = j.at("system");
  SystemType in = system_from_json(sys.at("in_factors"));
  SystemType out = system_from_json(sys.at("out_factors"));
  return classical::make_stoch_channel(in, out,
                                       real_matrix_from_json(j.at("matrix")));
}

json cl_comb_to_json(const classical::ClComb& c) {
  return json{{"pre", stoch_channel_to_json(c.pre)},
              {"post", stoch_channel_to_json(c.post)},
              {"env_factors", c.env.n_factors()}};
}

classical::ClComb cl_comb_from_json(const json& j) {
  return classical::cl_make_comb(stoch_channel_from_json(j.at("pre")),
                                 stoch_channel_from_json(j.at("post")),
                                 j.at("env_factors").get<std::size_t>());
}

json load_json_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::runtime_error("cannot open " + path);
  json j;
  f >> j;
  return j;
}

void save_json_file(const std::string& path, const json& j) {
  std::ofstream f(path);
  if (!f) throw std::runtime_error("cannot write " + path);
  f << j.dump(1) << "\n";
}

}  // namespace hoq
