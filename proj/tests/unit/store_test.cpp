#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>

#include "support/generators.hpp"
#include "unani/service/store.hpp"

namespace unani::service {
namespace {

namespace fs = std::filesystem;

class StoreTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("unani-store-" + std::to_string(::getpid()) + "-" +
            ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::remove_all(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  static StoreOptions fast(std::size_t snapshot_every = 0) { return {snapshot_every, false}; }

  static void add_patient(Store& s, const std::string& id, Gender g = Gender::female) {
    s.transact([&](const StoreState&, Store::PendingEvents& ev) {
      PatientProfile p;
      p.id = id;
      p.name = "Patient " + id;
      p.age = 22;
      p.gender = g;
      p.owner_account_id = "acc";
      p.created_at = "2026-01-01T00:00:00.000Z";
      ev.emplace_back("patient_created", to_json(p));
    });
  }

  static void add_symptoms(Store& s, const std::string& id, const std::string& text) {
    s.transact([&](const StoreState&, Store::PendingEvents& ev) {
      SymptomEntry e{"2026-01-01T00:00:01.000Z", text, {"running_nose"}};
      ev.emplace_back("symptoms_recorded", nlohmann::json{{"patient_id", id}, {"entry", to_json(e)}});
    });
  }

  fs::path dir_;
};

TEST_F(StoreTest, ReplaysLog) {
  StoreState before;
  {
    Store s(dir_, fast());
    add_patient(s, "p1");
    add_patient(s, "p2", Gender::male);
    add_symptoms(s, "p1", "running nose");
    before = s.state();
    EXPECT_EQ(s.last_seq(), 3u);
  }
  Store again(dir_, fast());
  EXPECT_EQ(again.state(), before);
  EXPECT_EQ(again.last_seq(), 3u);
  EXPECT_EQ(again.state().patients.at("p1").symptom_entries.size(), 1u);
}

TEST_F(StoreTest, FailedTransactionDiscardsEvents) {
  Store s(dir_, fast());
  EXPECT_THROW(s.transact([](const StoreState&, Store::PendingEvents& ev) {
                 ev.emplace_back("patient_created", nlohmann::json::object());
                 throw std::runtime_error("abort");
               }),
               std::runtime_error);
  EXPECT_EQ(s.last_seq(), 0u);
  EXPECT_TRUE(s.state().patients.empty());
}

TEST_F(StoreTest, TornTailIsDropped) {
  {
    Store s(dir_, fast());
    add_patient(s, "p1");
    add_patient(s, "p2");
  }
  const auto log = dir_ / "events.log";
  const auto full = fs::file_size(log);
  {
    std::ofstream out(log, std::ios::app | std::ios::binary);
    out << R"({"seq":3,"type":"patient_created","data":{"id":)";
  }
  {
    Store s(dir_, fast());
    EXPECT_EQ(s.state().patients.size(), 2u);
    EXPECT_EQ(fs::file_size(log), full);
    add_patient(s, "p3");
  }
  Store s(dir_, fast());
  EXPECT_EQ(s.state().patients.size(), 3u);
  EXPECT_EQ(s.last_seq(), 3u);
}

TEST_F(StoreTest, CorruptMiddleRecordIsAnError) {
  {
    Store s(dir_, fast());
    add_patient(s, "p1");
  }
  {
    std::ofstream out(dir_ / "events.log", std::ios::app | std::ios::binary);
    out << "garbage\n{\"also\": \"more\"}\n";
  }
  try {
    Store s(dir_, fast());
    FAIL() << "expected an error";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), "malformed_log");
  }
}

TEST_F(StoreTest, SnapshotAndCompaction) {
  StoreState before;
  {
    Store s(dir_, fast(3));
    for (int i = 0; i < 7; ++i) add_patient(s, "p" + std::to_string(i));
    before = s.state();
    EXPECT_TRUE(fs::exists(dir_ / "snapshot.json"));
  }
  {
    Store s(dir_, fast(3));
    EXPECT_EQ(s.state(), before);
    EXPECT_EQ(s.last_seq(), 7u);
    s.compact();
    EXPECT_EQ(fs::file_size(dir_ / "events.log"), 0u);
  }
  Store s(dir_, fast());
  EXPECT_EQ(s.state(), before);
  add_patient(s, "late");
  EXPECT_EQ(s.last_seq(), 8u);
}

TEST_F(StoreTest, StaleLogAfterSnapshotIsSkipped) {
  // A crash between the snapshot rename and the log truncate leaves events
  // the snapshot already covers.
  {
    Store s(dir_, fast());
    add_patient(s, "p1");
    add_patient(s, "p2");
  }
  const auto log = dir_ / "events.log";
  const auto saved = fs::temp_directory_path() / ("unani-log-" + std::to_string(::getpid()));
  fs::copy_file(log, saved, fs::copy_options::overwrite_existing);
  {
    Store s(dir_, fast());
    s.compact();
  }
  fs::copy_file(saved, log, fs::copy_options::overwrite_existing);
  fs::remove(saved);
  Store s(dir_, fast());
  EXPECT_EQ(s.state().patients.size(), 2u);
  EXPECT_EQ(s.last_seq(), 2u);
}

TEST_F(StoreTest, UnknownEventRejected) {
  Store s(dir_, fast());
  EXPECT_THROW(s.transact([](const StoreState&, Store::PendingEvents& ev) {
                 ev.emplace_back("mystery", nlohmann::json::object());
               }),
               Error);
  EXPECT_THROW(add_symptoms(s, "missing", "x"), Error);
  EXPECT_EQ(s.last_seq(), 0u);
}

TEST_F(StoreTest, StateJsonRoundTrip) {
  Store s(dir_, fast());
  add_patient(s, "p1");
  add_symptoms(s, "p1", "headache");
  s.transact([](const StoreState&, Store::PendingEvents& ev) {
    Account a{"acc", Role::practitioner, "hakeem", "pbkdf2-sha256$1$00$00", "2026-01-01T00:00:00.000Z"};
    ev.emplace_back("account_created", to_json(a, true));
    Appointment ap{"ap1", "p1", "acc", "2026-02-01T10:00:00Z", AppointmentStatus::requested, "2026-01-01T00:00:00.000Z"};
    ev.emplace_back("appointment_created", to_json(ap));
    ev.emplace_back("appointment_status", nlohmann::json{{"appointment_id", "ap1"}, {"status", "confirmed"}});
  });
  const auto st = s.state();
  EXPECT_EQ(st.appointments.at("ap1").status, AppointmentStatus::confirmed);
  EXPECT_EQ(state_from_json(state_to_json(st)), st);
  ASSERT_NE(st.account_by_username("hakeem"), nullptr);
  EXPECT_EQ(st.account_by_username("nobody"), nullptr);
}

TEST(Records, ClientJsonOmitsCredential) {
  Account a{"acc", Role::patient, "ayesha", "pbkdf2-sha256$1$00$00", "t"};
  EXPECT_FALSE(to_json(a).contains("credential"));
  EXPECT_EQ(account_from_json(to_json(a, true)), a);
  EXPECT_THROW((void)patient_from_json(nlohmann::json{{"id", 3}}), Error);
}

TEST(Records, EnumRoundTrip) {
  for (auto g : {Gender::female, Gender::male, Gender::other}) EXPECT_EQ(parse_gender(to_string(g)), g);
  for (auto e : {EngineKind::rules, EngineKind::tree, EngineKind::text}) EXPECT_EQ(parse_engine(to_string(e)), e);
  EXPECT_FALSE(parse_role("admin").has_value());
  EXPECT_FALSE(parse_appointment_status("cancelled").has_value());
}

}  // namespace
}  // namespace unani::service
