"""Published benchmark values that the reproduction scorecard compares against.

All constants are transcribed from the original study of this dataset and
workflow; the comparison tolerances live with the scorecard builder, not
here. The AUC summary table doubles as the input for the deterministic
reference ANOVA and many-to-one comparison.
"""

DATASET_ROWS = 19020
DATASET_GAMMA = 12332
DATASET_HADRON = 6688
REPORTED_MISSING = 123

OUTLIERS_IQR_FENCE = 975
OUTLIERS_THREE_SIGMA = 2998

# skewness of each attribute after cleaning, in attribute order
CLEAN_SKEWNESS = {
    "fLength": 1.146622,
    "fWidth": 0.811858,
    "fSize": 0.695432,
    "fConc": 0.445778,
    "fConc1": 0.543348,
    "fAsym": -0.313774,
    "fM3Long": 0.138903,
    "fM3Trans": -0.005655,
    "fAlpha": 0.937793,
    "fDist": 0.139228,
}

PCA_N_COMPONENTS = 5
PCA_VARIANCE_RATIOS = (0.627236, 0.165211, 0.082783, 0.067893, 0.033773)
PCA_CUMULATIVE_VARIANCE = 0.9769

# univariate F scores in attribute order
UFS_SCORES = {
    "fLength": 7.577e+00,
    "fWidth": 3.009e+02,
    "fSize": 8.855e+01,
    "fConc": 3.225e+02,
    "fConc1": 3.807e+02,
    "fAsym": 2.206e+01,
    "fM3Long": 1.540e+02,
    "fM3Trans": 8.226e-01,
    "fAlpha": 3.882e+03,
    "fDist": 3.068e+01,
}
UFS_SELECTED = ("fAlpha", "fConc1", "fConc", "fWidth", "fM3Long")
RFE_SELECTED = ("fWidth", "fSize", "fConc", "fConc1", "fAlpha")

ALGORITHM_ORDER = ("lr", "lda", "knn", "cart", "nb", "svm")
FORM_ORDER = ("raw", "clean", "norm", "stand", "pca", "ica", "ufs", "rfe")

# cross-validation accuracy summary, rows in FORM_ORDER, columns in
# ALGORITHM_ORDER
ACCURACY_TABLE = {
    "raw":   (0.7604, 0.7606, 0.7531, 0.7944, 0.6435, 0.5148),
    "clean": (0.7379, 0.7385, 0.7094, 0.7440, 0.6773, 0.5019),
    "norm":  (0.7377, 0.7385, 0.7646, 0.7450, 0.6773, 0.7533),
    "stand": (0.7408, 0.7385, 0.7648, 0.7452, 0.6773, 0.8215),
    "pca":   (0.7314, 0.7262, 0.7112, 0.6712, 0.7181, 0.5077),
    "ica":   (0.7198, 0.7262, 0.7160, 0.6944, 0.7115, 0.4860),
    "ufs":   (0.7152, 0.7135, 0.7258, 0.7044, 0.6883, 0.7002),
    "rfe":   (0.7285, 0.7277, 0.7050, 0.7273, 0.6942, 0.7383),
}

# ROC AUC summary in the same layout
AUC_TABLE = {
    "raw":   (0.8394, 0.8364, 0.8264, 0.7901, 0.7558, 0.6979),
    "clean": (0.7958, 0.7975, 0.7768, 0.7502, 0.7342, 0.6672),
    "norm":  (0.7976, 0.7975, 0.8441, 0.7460, 0.7342, 0.8312),
    "stand": (0.7967, 0.7975, 0.8410, 0.7473, 0.7342, 0.8964),
    "pca":   (0.7780, 0.7789, 0.7793, 0.6711, 0.7816, 0.6661),
    "ica":   (0.7757, 0.7789, 0.7892, 0.6944, 0.7813, 0.7759),
    "ufs":   (0.7813, 0.7816, 0.7887, 0.7085, 0.7486, 0.7389),
    "rfe":   (0.7863, 0.7865, 0.7653, 0.7258, 0.7451, 0.8079),
}

# reference ANOVA on the AUC table (8 groups of 6)
ANOVA_DF_MODEL = 7
ANOVA_DF_ERROR = 40
ANOVA_SS_MODEL = 0.01866357
ANOVA_SS_ERROR = 0.08767290
ANOVA_SS_TOTAL = 0.10633647
ANOVA_F = 1.22
ANOVA_P = 0.3165
ANOVA_R_SQUARE = 0.175514
ANOVA_COEFF_VAR = 6.065973
ANOVA_ROOT_MSE = 0.046817
ANOVA_GRAND_MEAN = 0.771795

# many-to-one comparison against the raw baseline on the AUC table:
# (difference, ci_low, ci_high), none significant at alpha = 0.05
DUNNETT_VS_RAW = {
    "stand": (0.01118, -0.06264, 0.08499),
    "norm":  (0.00076, -0.07308, 0.07457),
    "rfe":   (-0.02152, -0.09534, 0.05230),
    "ica":   (-0.02510, -0.09891, 0.04872),
    "ufs":   (-0.03307, -0.10689, 0.04074),
    "clean": (-0.03738, -0.11119, 0.03644),
    "pca":   (-0.04849, -0.12230, 0.02533),
}

# critical value implied by the stand-raw interval half-width divided by
# the standard error sqrt(2 * MSE / 6)
DUNNETT_CRITICAL_VALUE = 2.73


def auc_groups():
    """AUC table rows as a list of 6-value groups in form order."""
    return [list(AUC_TABLE[form]) for form in FORM_ORDER]


def accuracy_groups():
    return [list(ACCURACY_TABLE[form]) for form in FORM_ORDER]
