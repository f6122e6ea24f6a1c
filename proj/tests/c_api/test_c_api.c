/* Exercises the public C interface from plain C. */
#include <math.h>
#include <stdio.h>
#include <stdlib.h>
#include <string.h>

#include "mixsemble/mixsemble.h"

static int failures = 0;

#define EXPECT(cond)                                                   \
  do {                                                                 \
    if (!(cond)) {                                                     \
      fprintf(stderr, "%s:%d: expectation failed: %s\n", __FILE__,     \
              __LINE__, #cond);                                        \
      ++failures;                                                      \
    }                                                                  \
  } while (0)

#define EXPECT_OK(call) EXPECT((call) == MSB_OK)

static void partitions_and_ari(void) {
  const int32_t a_labels[] = {0, 0, 0, 1, 1, 1};
  const int32_t b_labels[] = {1, 1, 1, 0, 0, 0};
  msb_partition *a = NULL, *b = NULL;
  double ari = -2.0;
  int32_t copy[6];

  EXPECT_OK(msb_partition_create(a_labels, 6, 2, &a));
  EXPECT_OK(msb_partition_create(b_labels, 6, 2, &b));
  EXPECT(msb_partition_size(a) == 6);
  EXPECT(msb_partition_n_clusters(a) == 2);
  EXPECT(msb_partition_labels(b, copy, 6) == 6);
  EXPECT(copy[0] == 1 && copy[5] == 0);
  EXPECT_OK(msb_adjusted_rand_index(a, b, &ari));
  EXPECT(ari == 1.0);
  msb_partition_destroy(a);
  msb_partition_destroy(b);
}

static void errors(void) {
  const int32_t bad[] = {0, 5};
  msb_partition* p = NULL;
  msb_status s = msb_partition_create(bad, 2, 2, &p);
  EXPECT(s == MSB_ERR_OUT_OF_RANGE_LABEL);
  EXPECT(p == NULL);
  EXPECT(strstr(msb_last_error(), "OutOfRangeLabel") != NULL);
  EXPECT(msb_status_is_validation(s) == 1);
  EXPECT(strcmp(msb_status_name(MSB_ERR_SINGULAR_COMPONENT), "SingularComponent") == 0);
  EXPECT(msb_status_is_validation(MSB_ERR_SINGULAR_COMPONENT) == 0);
  EXPECT(msb_partition_create(NULL, 2, 2, &p) == MSB_ERR_INVALID_ARGUMENT);
  EXPECT(msb_adjusted_rand_index(NULL, NULL, NULL) == MSB_ERR_INVALID_ARGUMENT);
  EXPECT(msb_simulate_preset("no-such-preset", 1, NULL) == MSB_ERR_INVALID_ARGUMENT);
  {
    msb_dataset* d = NULL;
    EXPECT(msb_simulate_preset("no-such-preset", 1, &d) == MSB_ERR_BAD_SPEC);
    EXPECT(d == NULL);
  }
  /* Destroying NULL is a no-op. */
  msb_partition_destroy(NULL);
  msb_consensus_destroy(NULL);
}

static void consensus(void) {
  /* Two perfect observers and one that disagrees on item 3. */
  const int32_t entries[] = {0, 0, 0, 0, 0, 0, 1, 1, 1, 1, 1, 0, 2, 2, 2, 2, 2, 2};
  msb_label_matrix* m = NULL;
  msb_consensus_model* model = NULL;
  msb_partition* labels = NULL;
  msb_partition* vote = NULL;
  msb_label_matrix* aligned = NULL;
  msb_em_config cfg = msb_em_config_default();
  int32_t out[6];
  double priors[3];
  size_t n_rates, n_trace;
  double* rates;

  EXPECT(cfg.max_iterations == 1000);
  EXPECT(cfg.smoothing == 0.01);
  EXPECT_OK(msb_label_matrix_create(entries, 6, 3, 3, &m));
  EXPECT(msb_label_matrix_n_items(m) == 6);
  EXPECT(msb_label_matrix_n_observers(m) == 3);
  EXPECT(msb_label_matrix_at(m, 3, 2) == 0);

  EXPECT_OK(msb_consensus_fit(m, NULL, &model));
  EXPECT_OK(msb_consensus_hard_labels(model, &labels));
  EXPECT(msb_partition_labels(labels, out, 6) == 6);
  EXPECT(out[0] == 0 && out[2] == 1 && out[3] == 1 && out[5] == 2);
  EXPECT(msb_consensus_priors(model, priors, 3) == 3);
  EXPECT(fabs(priors[0] + priors[1] + priors[2] - 1.0) < 1e-12);
  n_rates = msb_consensus_error_rates(model, NULL, 0);
  EXPECT(n_rates == 27);
  rates = malloc(n_rates * sizeof(double));
  EXPECT(msb_consensus_error_rates(model, rates, n_rates) == 27);
  EXPECT(rates[0] > 0.9); /* observer 0, truth 0, says 0 */
  free(rates);
  n_trace = msb_consensus_loglik_trace(model, NULL, 0);
  EXPECT(n_trace == (size_t)msb_consensus_n_iterations(model) + 1);
  EXPECT(msb_consensus_converged(model) == 1);
  EXPECT(isfinite(msb_consensus_log_likelihood(model)));
  EXPECT(msb_consensus_responsibilities(model, NULL, 0) == 18);

  EXPECT_OK(msb_label_matrix_align(m, 0, &aligned));
  EXPECT_OK(msb_majority_vote(aligned, &vote));
  EXPECT(msb_partition_labels(vote, out, 6) == 6);
  EXPECT(out[3] == 1);
  EXPECT(msb_label_matrix_align(m, 9, &aligned) == MSB_ERR_BAD_COLUMN_INDEX);

  msb_partition_destroy(vote);
  msb_label_matrix_destroy(aligned);
  msb_partition_destroy(labels);
  msb_consensus_destroy(model);
  msb_label_matrix_destroy(m);
}

static void datasets_and_experiments(const char* tmpdir) {
  msb_dataset* d = NULL;
  msb_partition* truth = NULL;
  msb_report* report = NULL;
  char path[1024], config[1024], results[1024];
  char* text = NULL;
  FILE* f;

  EXPECT_OK(msb_simulate_preset("x2-like", 3, &d));
  EXPECT(msb_dataset_n_items(d) == 300);
  EXPECT(msb_dataset_n_features(d) == 2);
  EXPECT_OK(msb_dataset_truth(d, &truth));
  EXPECT(msb_partition_n_clusters(truth) == 3);
  snprintf(path, sizeof path, "%s/sim.csv", tmpdir);
  EXPECT_OK(msb_dataset_write_csv(d, path));
  msb_partition_destroy(truth);
  msb_dataset_destroy(d);

  snprintf(config, sizeof config, "%s/config.json", tmpdir);
  f = fopen(config, "w");
  EXPECT(f != NULL);
  if (!f) return;
  fprintf(f,
          "{\"datasets\": [{\"name\": \"sim\", \"csv\": \"sim.csv\", \"label_column\": \"label\"}],"
          " \"members\": [\"kmeans\", \"gmm-full\"], \"n_runs\": 2}");
  fclose(f);
  EXPECT_OK(msb_run_experiment_file(config, 2, &report));
  EXPECT(msb_report_n_records(report) == 2 * (2 + 4));
  EXPECT(msb_report_output_dir(report) == NULL);
  snprintf(results, sizeof results, "%s/results.csv", tmpdir);
  EXPECT_OK(msb_report_write_csv(report, results));
  EXPECT_OK(msb_report_summarize(report, &text));
  EXPECT(text != NULL && strstr(text, "mixsemble") != NULL);
  msb_string_free(text);
  msb_report_destroy(report);

  EXPECT(msb_run_experiment_file("/nonexistent.json", 0, &report) == MSB_ERR_IO);
}

int main(int argc, char** argv) {
  const char* tmpdir = argc > 1 ? argv[1] : ".";
  partitions_and_ari();
  errors();
  consensus();
  datasets_and_experiments(tmpdir);
  if (failures) {
    fprintf(stderr, "%d C API expectation(s) failed\n", failures);
    return 1;
  }
  printf("C API checks passed\n");
  return 0;
}
