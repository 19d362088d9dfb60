/* Copyright 2026 The StructKit Authors. All Rights Reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

#include "fixtures.h"

#include <stdexcept>

namespace structkit::testing {
namespace {

std::string At(const std::vector<std::string>& pool, std::size_t i) {
  return pool[i % pool.size()];
}

TaskRecord Record(TaskKind task, std::string dataset, std::string text,
                  Gold gold) {
  TaskRecord r;
  r.task = task;
  r.dataset_id = std::move(dataset);
  r.text = std::move(text);
  r.gold = std::move(gold);
  return r;
}

const std::vector<std::string>& Events() {
  static const std::vector<std::string> kEvents = {
      "Davis Cup", "Euro Open", "Solstice Fair", "Winter Biennale"};
  return kEvents;
}

std::vector<TaskRecord> Ner() {
  std::vector<TaskRecord> out;
  for (std::size_t i = 0; i < kFixtureRecords; ++i) {
    std::map<std::string, std::string> v = {{"P", At(Persons(), i)},
                                            {"P2", At(Persons(), i + 7)},
                                            {"L", At(Cities(), i)},
                                            {"O", At(Organizations(), i)},
                                            {"M", At(Events(), i)}};
    EntityGold gold;
    Filled f;
    switch (i % 3) {
      case 0:
        f = Fill("{P} visited {L} on behalf of {O} .", v);
        gold.entities = {{f.spans["P"], "person"},
                         {f.spans["L"], "location"},
                         {f.spans["O"], "organization"}};
        break;
      case 1:
        f = Fill("{O} hired {P} after the {M} ended in {L} .", v);
        gold.entities = {{f.spans["O"], "organization"},
                         {f.spans["P"], "person"},
                         {f.spans["M"], "miscellaneous"},
                         {f.spans["L"], "location"}};
        break;
      default:
        f = Fill("In {L} , {P} met {P2} for lunch .", v);
        gold.entities = {{f.spans["L"], "location"},
                         {f.spans["P"], "person"},
                         {f.spans["P2"], "person"}};
        break;
    }
    out.push_back(Record(TaskKind::kNer, "conll03", f.text, gold));
  }
  return out;
}

std::vector<TaskRecord> Jer() {
  std::vector<TaskRecord> out;
  for (std::size_t i = 0; i < kFixtureRecords; ++i) {
    std::map<std::string, std::string> v = {{"P", At(Persons(), i)},
                                            {"P2", At(Persons(), i + 5)},
                                            {"L", At(Cities(), i + 3)},
                                            {"O", At(Organizations(), i + 2)},
                                            {"M", At(Events(), i)}};
    EntityGold gold;
    Filled f;
    switch (i % 3) {
      case 0:
        f = Fill("{P} works for {O} , which is based in {L} .", v);
        gold.entities = {{f.spans["P"], "person"},
                         {f.spans["O"], "organization"},
                         {f.spans["L"], "location"}};
        gold.relations = {{0, 1, "work for"}, {1, 2, "organization based in"}};
        break;
      case 1:
        f = Fill("{P} lives in {L} and once met {P2} at the {M} .", v);
        gold.entities = {{f.spans["P"], "person"},
                         {f.spans["L"], "location"},
                         {f.spans["P2"], "person"},
                         {f.spans["M"], "other"}};
        gold.relations = {{0, 1, "live in"}};
        break;
      default:
        f = Fill("Police say {P} killed {P2} near {L} .", v);
        gold.entities = {{f.spans["P"], "person"},
                         {f.spans["P2"], "person"},
                         {f.spans["L"], "location"}};
        gold.relations = {{0, 1, "kill"}, {1, 2, "live in"}};
        break;
    }
    out.push_back(
        Record(TaskKind::kJointEntityRelation, "conll04", f.text, gold));
  }
  return out;
}

std::vector<TaskRecord> Rc() {
  std::vector<TaskRecord> out;
  for (std::size_t i = 0; i < kFixtureRecords; ++i) {
    std::map<std::string, std::string> v = {{"P", At(Persons(), i + 3)},
                                            {"L", At(Cities(), i + 5)},
                                            {"O", At(Organizations(), i + 7)}};
    const Filled f =
        Fill("{P} , a senior analyst at {O} , moved to {L} last spring .", v);
    RcGold gold;
    switch (i % 3) {
      case 0:
        gold = {f.spans.at("P"), f.spans.at("O"), "employee of"};
        break;
      case 1:
        gold = {f.spans.at("P"), f.spans.at("L"), "city of residence"};
        break;
      default:
        gold = {f.spans.at("O"), f.spans.at("P"), "employer of"};
        break;
    }
    out.push_back(
        Record(TaskKind::kRelationClassification, "tacred", f.text, gold));
  }
  return out;
}

std::vector<TaskRecord> Oie() {
  std::vector<TaskRecord> out;
  for (std::size_t i = 0; i < kFixtureRecords; ++i) {
    const std::string p = At(Persons(), i + 9);
    const std::string o = At(Organizations(), i + 4);
    const std::string l = At(Cities(), i + 8);
    OieGold gold;
    std::string text;
    if (i % 2 == 0) {
      text = p + " founded " + o + " in " + l + " .";
      gold.tuples = {{p, "founded", o}, {o, "is located in", l}};
    } else {
      text = "Last year " + o + " acquired a small studio near " + l + " .";
      gold.tuples = {{o, "acquired", "a small studio near " + l}};
    }
    out.push_back(Record(TaskKind::kOie, "oie2016", text, gold));
  }
  return out;
}

std::vector<TaskRecord> FactualProbe() {
  std::vector<TaskRecord> out;
  for (std::size_t i = 0; i < kFixtureRecords; ++i) {
    const std::string p = At(Persons(), i + 11);
    FactGold gold;
    std::string text;
    switch (i % 3) {
      case 0:
        gold = {p, "place of birth", At(Cities(), i + 2)};
        text = p + " was born in " + gold.object + " .";
        break;
      case 1:
        gold = {p, "place of death", At(Cities(), i + 6)};
        text = p + " died in " + gold.object + " after a long illness .";
        break;
      default:
        gold = {p, "employer", At(Organizations(), i + 1)};
        text = p + " spent a decade working at " + gold.object + " .";
        break;
    }
    out.push_back(Record(TaskKind::kFactualProbe, "t-rex", text, gold));
  }
  return out;
}

std::vector<TaskRecord> Srl() {
  std::vector<TaskRecord> out;
  for (std::size_t i = 0; i < kFixtureRecords; ++i) {
    std::map<std::string, std::string> v = {{"P", At(Persons(), i)},
                                            {"P2", At(Persons(), i + 4)},
                                            {"P3", At(Persons(), i + 8)}};
    const Filled f = Fill(
        "{P} sold the house to {P2} yesterday and {P3} {V2} .",
        {{"P", v["P"]}, {"P2", v["P2"]}, {"P3", v["P3"]}, {"V2", "laughed"}});
    const std::size_t sold = f.text.find(" sold ") + 1;
    const std::size_t house = f.text.find("the house");
    const std::size_t yesterday = f.text.find("yesterday");
    FrameGold gold;
    PredicateFrame first;
    first.predicate = {sold, sold + 4};
    first.arguments = {{f.spans.at("P"), "first argument"},
                       {{house, house + 9}, "second argument"},
                       {f.spans.at("P2"), "third argument"},
                       {{yesterday, yesterday + 9}, "temporal"}};
    gold.frames.push_back(first);
    if (i % 2 == 0) {
      PredicateFrame second;
      second.predicate = f.spans.at("V2");
      second.arguments = {{f.spans.at("P3"), "first argument"}};
      gold.frames.push_back(second);
    }
    out.push_back(Record(TaskKind::kSrl, "conll05", f.text, gold));
  }
  return out;
}

struct EventSentence {
  Filled filled;
  Span attacked;
  Span meeting;
};

EventSentence Event(std::size_t i) {
  std::map<std::string, std::string> v = {{"P", At(Persons(), i + 2)},
                                          {"P2", At(Persons(), i + 13)},
                                          {"L", At(Cities(), i + 9)},
                                          {"O", At(Organizations(), i + 5)}};
  EventSentence e;
  e.filled =
      Fill("{P} attacked {P2} in {L} before the {O} meeting began .", v);
  const std::size_t a = e.filled.text.find("attacked");
  const std::size_t m = e.filled.text.find("meeting");
  e.attacked = {a, a + 8};
  e.meeting = {m, m + 7};
  return e;
}

std::vector<TaskRecord> EventTrigger() {
  std::vector<TaskRecord> out;
  for (std::size_t i = 0; i < kFixtureRecords; ++i) {
    const EventSentence e = Event(i);
    EntityGold gold;
    gold.entities = {{e.attacked, "attack"}, {e.meeting, "meet"}};
    out.push_back(
        Record(TaskKind::kEventTrigger, "ace2005", e.filled.text, gold));
  }
  return out;
}

std::vector<TaskRecord> EventArgument() {
  std::vector<TaskRecord> out;
  for (std::size_t i = 0; i < kFixtureRecords; ++i) {
    const EventSentence e = Event(i);
    FrameGold gold;
    gold.frames.push_back({e.attacked,
                           "attack",
                           {{e.filled.spans.at("P"), "attacker"},
                            {e.filled.spans.at("P2"), "target"},
                            {e.filled.spans.at("L"), "place"}}});
    if (i % 2 == 1) {
      gold.frames.push_back(
          {e.meeting, "meet", {{e.filled.spans.at("O"), "entity"}}});
    }
    out.push_back(
        Record(TaskKind::kEventArgument, "ace2005", e.filled.text, gold));
  }
  return out;
}

std::vector<TaskRecord> Coref() {
  std::vector<TaskRecord> out;
  for (std::size_t i = 0; i < kFixtureRecords; ++i) {
    std::map<std::string, std::string> v = {
        {"P", At(Persons(), i + 1)},
        {"P2", At(Persons(), i + 10)},
        {"O", At(Organizations(), i + 3)},
        {"S1", "she"},
        {"H", "him"},
        {"S2", "she"}};
    CorefGold gold;
    Filled f;
    if (i % 2 == 0) {
      f = Fill(
          "{P} told {P2} that {S1} would call {H} after the {O} meeting , "
          "and {S2} did .",
          v);
      gold.clusters = {{f.spans["P"], f.spans["S1"], f.spans["S2"]},
                       {f.spans["P2"], f.spans["H"]}};
    } else {
      v["T"] = "they";
      v["T2"] = "their";
      f = Fill("{O} said {T} expect {T2} profits to grow , {P} reported .", v);
      gold.clusters = {{f.spans["O"], f.spans["T"], f.spans["T2"]}};
    }
    out.push_back(Record(TaskKind::kCoreference, "conll12", f.text, gold));
  }
  return out;
}

std::vector<TaskRecord> Dst() {
  static const std::vector<std::string> kPrices = {"cheap", "moderate",
                                                   "expensive"};
  static const std::vector<std::string> kAreas = {"north", "south", "east",
                                                  "west", "centre"};
  std::vector<TaskRecord> out;
  for (std::size_t i = 0; i < kFixtureRecords; ++i) {
    const std::string price = At(kPrices, i);
    const std::string area = At(kAreas, i);
    const std::string people = std::to_string(1 + i % 6);
    DstGold gold;
    gold.slots = {"hotel area", "hotel book people", "hotel price range",
                  "hotel stars"};
    std::string text = "[User]: I need a " + price + " hotel in the " + area +
                       " . [Agent]: How many guests ? [User]: " + people +
                       " people .";
    gold.state = {{"hotel area", area},
                  {"hotel book people", people},
                  {"hotel price range", price}};
    if (i % 4 == 3) {
      gold.state["hotel stars"] = "4";
      text += " Four stars please .";
    } else {
      gold.state["hotel stars"] = std::string(kNotGiven);
    }
    out.push_back(
        Record(TaskKind::kDialogueStateTracking, "multiwoz", text, gold));
  }
  return out;
}

std::vector<TaskRecord> Intent() {
  static const std::vector<std::pair<std::string, std::string>> kUtterances = {
      {"play some jazz by {X}", "play music"},
      {"add this song by {X} to my road trip playlist", "add to playlist"},
      {"will it rain tomorrow in {Y}", "get weather"},
      {"book a table for four at a diner in {Y}", "book restaurant"},
      {"rate the latest novel by {X} five stars", "rate book"},
      {"find the documentary about {X}", "search creative work"},
      {"which cinemas near {Y} show the new thriller", "search screening event"},
  };
  std::vector<TaskRecord> out;
  for (std::size_t i = 0; i < kFixtureRecords; ++i) {
    const auto& [tmpl, intent] = kUtterances[i % kUtterances.size()];
    const Filled f =
        Fill(tmpl, {{"X", At(Persons(), i)}, {"Y", At(Cities(), i)}});
    out.push_back(Record(TaskKind::kIntentDetection, "snips", f.text,
                         IntentGold{intent}));
  }
  return out;
}

}  // namespace

const std::vector<std::string>& Persons() {
  static const std::vector<std::string> kPersons = [] {
    const std::vector<std::string> first = {
        "Alice", "Bruno", "Clara", "Dmitri", "Elena", "Farid",
        "Greta", "Hugo",  "Ines",  "Jonas",  "Kira",  "Luca",
        "Mira",  "Nils",  "Olga",  "Pavel",  "Rosa",  "Sven",
        "Tara",  "Umar",  "Vera",  "Wim",    "Xenia", "Yusuf"};
    const std::vector<std::string> last = {
        "Adler",  "Brandt", "Castillo", "Dumont",   "Eriksen", "Fischer",
        "Garcia", "Horvat", "Ivanova",  "Jansen",   "Kowalski", "Larsen",
        "Moreau", "Novak",  "Okafor",   "Petrov",   "Quinn",   "Rossi",
        "Schmidt", "Tanaka", "Ulrich",  "Varga",    "Weber",   "Zhou"};
    std::vector<std::string> out;
    for (std::size_t i = 0; i < first.size(); ++i) {
      out.push_back(first[i] + " " + last[(i * 5) % last.size()]);
    }
    return out;
  }();
  return kPersons;
}

const std::vector<std::string>& Cities() {
  static const std::vector<std::string> kCities = {
      "Lisbon", "Oslo",  "Nairobi", "Quito",  "Hanoi",   "Dublin",
      "Lima",   "Tunis", "Riga",    "Accra",  "Bogota",  "Kyoto",
      "Perth",  "Porto", "Malmo",   "Graz",   "Turin",   "Leeds",
      "Ghent",  "Bergen", "Tampere", "Cusco", "Dakar",   "Osaka"};
  return kCities;
}

const std::vector<std::string>& Organizations() {
  static const std::vector<std::string> kOrganizations = {
      "Acme Labs",       "Borealis Bank",   "Cobalt Media",
      "Delta Freight",   "Ember Foods",     "Fjord Energy",
      "Granite Works",   "Harbor Health",   "Iris Optics",
      "Juniper Press",   "Kestrel Air",     "Lumen Textiles",
      "Meridian Steel",  "Nimbus Cloud",    "Orchid Pharma",
      "Pioneer Rail",    "Quartz Mining",   "Radiant Solar",
      "Summit Insurance", "Tidal Shipping", "Umbra Games",
      "Vertex Motors",   "Willow Books",    "Zephyr Telecom"};
  return kOrganizations;
}

Filled Fill(std::string_view tmpl,
            const std::map<std::string, std::string>& values) {
  Filled out;
  std::size_t i = 0;
  while (i < tmpl.size()) {
    if (tmpl[i] == '{') {
      const std::size_t close = tmpl.find('}', i);
      const std::string key(tmpl.substr(i + 1, close - i - 1));
      const std::string& value = values.at(key);
      out.spans[key] = {out.text.size(), out.text.size() + value.size()};
      out.text += value;
      i = close + 1;
    } else {
      out.text += tmpl[i++];
    }
  }
  return out;
}

const std::vector<std::pair<TaskKind, std::string>>& FixtureDatasets() {
  static const std::vector<std::pair<TaskKind, std::string>> kDatasets = {
      {TaskKind::kOie, "oie2016"},
      {TaskKind::kRelationClassification, "tacred"},
      {TaskKind::kFactualProbe, "t-rex"},
      {TaskKind::kJointEntityRelation, "conll04"},
      {TaskKind::kNer, "conll03"},
      {TaskKind::kSrl, "conll05"},
      {TaskKind::kEventTrigger, "ace2005"},
      {TaskKind::kEventArgument, "ace2005"},
      {TaskKind::kCoreference, "conll12"},
      {TaskKind::kDialogueStateTracking, "multiwoz"},
      {TaskKind::kIntentDetection, "snips"},
  };
  return kDatasets;
}

std::vector<TaskRecord> FixtureRecords(TaskKind task) {
  switch (task) {
    case TaskKind::kOie:
      return Oie();
    case TaskKind::kRelationClassification:
      return Rc();
    case TaskKind::kFactualProbe:
      return FactualProbe();
    case TaskKind::kJointEntityRelation:
      return Jer();
    case TaskKind::kNer:
      return Ner();
    case TaskKind::kSrl:
      return Srl();
    case TaskKind::kEventTrigger:
      return EventTrigger();
    case TaskKind::kEventArgument:
      return EventArgument();
    case TaskKind::kCoreference:
      return Coref();
    case TaskKind::kDialogueStateTracking:
      return Dst();
    case TaskKind::kIntentDetection:
      return Intent();
  }
  throw std::logic_error("unknown task");
}

}  // namespace structkit::testing
