#include <stdio.h>
#include <string.h>

#include "qzeta.h"

#define CHECK(cond)                                                   \
  do {                                                                \
    if (!(cond)) {                                                    \
      fprintf(stderr, "failed: %s (%s)\n", #cond, qz_last_error_message()); \
      return 1;                                                       \
    }                                                                 \
  } while (0)

int main(void) {
  QzGroup *g = NULL;
  CHECK(qz_group_new("(7; 1,3)", &g) == QZ_STATUS_OK);
  CHECK(qz_group_order(g) == 7);
  CHECK(qz_group_is_small(g));

  QzZeta *z = NULL;
  CHECK(qz_zeta_monomial(g, "1,1", "1,1", false, &z) == QZ_STATUS_OK);
  char *top = NULL;
  CHECK(qz_zeta_topological(z, &top) == QZ_STATUS_OK);
  CHECK(strcmp(top, "7 / (s + 1)^2") == 0);
  printf("%s\n", top);
  qz_string_free(top);

  QzGroup *bad = NULL;
  CHECK(qz_group_new("(7; 1", &bad) == QZ_STATUS_PARSE);
  CHECK(strlen(qz_last_error_message()) > 0);

  uint64_t classes = 0;
  CHECK(qz_tetra_conjugacy_count(3, 2, &classes) == QZ_STATUS_OK);
  CHECK(classes == 11);

  qz_zeta_free(z);
  qz_group_free(g);
  return 0;
}
