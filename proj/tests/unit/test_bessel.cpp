#include <doctest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "sid/bessel.hpp"
#include "sid/error.hpp"

using namespace sid;

namespace {

struct BesselPoint {
  cplx nu;
  double tau;
  cplx J, Y, Jp, Yp;
};

// 40-digit reference values (mpmath besselj/bessely and their derivatives).
const std::vector<BesselPoint> kReference = {
{{0.0, 0.0}, 0.01, {0.99997500015624956597, 0.0}, {-3.0054556370836459578, 0.0}, {-0.0049999375002604161241, 0.0}, {63.678596282060656374, 0.0}},
{{0.0, 0.0}, 0.05, {0.99937509764946858088, 0.0}, {-1.9793110008172096721, 0.0}, {-0.024992188313759699133, 0.0}, {12.789855171174970408, 0.0}},
{{0.0, 0.0}, 1, {0.76519768655796655145, 0.0}, {0.088256964215676957983, 0.0}, {-0.44005058574493351596, 0.0}, {0.78121282130028871655, 0.0}},
{{0.0, 0.0}, 3, {-0.26005195490193343762, 0.0}, {0.37685001001279038197, 0.0}, {-0.33905895852593645893, 0.0}, {-0.32467442479179997844, 0.0}},
{{0.0, 0.0}, 9.5, {-0.1939287476874223554, 0.0}, {0.17121062620272384487, 0.0}, {-0.16126443075752985095, 0.0}, {-0.20317989938720766824, 0.0}},
{{0.0, 0.0}, 10.5, {-0.23664819446234712622, 0.0}, {-0.067530372497876396801, 0.0}, {0.078850014227331488153, 0.0}, {-0.23370422835726857839, 0.0}},
{{0.0, 0.0}, 15, {-0.014224472826780773234, 0.0}, {0.20546429603891826479, 0.0}, {-0.20510403861352276115, 0.0}, {-0.02107362803687351194, 0.0}},
{{0.0, 0.0}, 25, {0.096266783275958116174, 0.0}, {-0.12724943226800613783, 0.0}, {0.12535024958028990465, 0.0}, {0.098829964783237410053, 0.0}},
{{0.0, 0.0}, 39, {0.11135769795486712329, 0.0}, {0.062623533746885900262, 0.0}, {-0.06405610368868934664, 0.0}, {0.11056410613668106316, 0.0}},
{{0.0, 0.0}, 41, {-0.10074578912447979774, 0.0}, {0.073324239046288664756, 0.0}, {-0.072101261604979386451, 0.0}, {-0.10164733899741434468, 0.0}},
{{0.0, 0.0}, 60, {-0.091471804089061869531, 0.0}, {0.047358952209449399203, 0.0}, {-0.046598383758166317869, 0.0}, {-0.091869609369866895264, 0.0}},
{{0.0, 0.0}, 500, {-0.034100556880731998265, 0.0}, {0.0105067087398313741, 0.0}, {-0.010472613470372292844, 0.0}, {-0.034111080629137135895, 0.0}},
{{0.25, 0.0}, 0.01, {0.29336799414397816048, 0.0}, {-4.0464770650778020857, 0.0}, {7.3330263711918877038, 0.0}, {115.85808570323600194, 0.0}},
{{0.25, 0.0}, 0.05, {0.43847692870857532626, 0.0}, {-2.4614309500742561726, 0.0}, {2.1836131555825366404, 0.0}, {16.779862203654334133, 0.0}},
{{0.25, 0.0}, 1, {0.75223133334079005698, 0.0}, {-0.1944217536771643949, 0.0}, {-0.14335671752069288319, 0.0}, {0.88336048677769696341, 0.0}},
{{0.25, 0.0}, 3, {-0.1006370643367312748, 0.0}, {0.44738010127489242373, 0.0}, {-0.43498771872377941709, 0.0}, {-0.1749031656400425203, 0.0}},
{{0.25, 0.0}, 9.5, {-0.11442623157382232584, 0.0}, {0.23205782481216798134, 0.0}, {-0.22628463771922433426, 0.0}, {-0.12673218894525786273, 0.0}},
{{0.25, 0.0}, 10.5, {-0.24459369890035644602, 0.0}, {0.027450952549324179214, 0.0}, {-0.015845934896423637202, 0.0}, {-0.24610392162546872122, 0.0}},
{{0.25, 0.0}, 15, {0.065084575573504809282, 0.0}, {0.19541688365546949131, 0.0}, {-0.19766546282944257459, 0.0}, {0.05860296962504498743, 0.0}},
{{0.25, 0.0}, 25, {0.040436476712673719024, 0.0}, {-0.15435631659425921288, 0.0}, {0.15357092507491010794, 0.0}, {0.043528732156219175567, 0.0}},
{{0.25, 0.0}, 39, {0.1268351388355489993, 0.0}, {0.015343611275800209327, 0.0}, {-0.016970447539107023094, 0.0}, {0.12664625989389064982, 0.0}},
{{0.25, 0.0}, 41, {-0.065098579555592453292, 0.0}, {0.10624792393082616211, 0.0}, {-0.10546004724854241976, 0.0}, {-0.066397768935416444547, 0.0}},
{{0.25, 0.0}, 60, {-0.066426734438988207037, 0.0}, {0.078724470822672028671, 0.0}, {-0.078172992744728122901, 0.0}, {-0.067084466678086235674, 0.0}},
{{0.25, 0.0}, 500, {-0.027485487137731849351, 0.0}, {0.022754934938932340972, 0.0}, {-0.022727458005456266308, 0.0}, {-0.027508252362598701151, 0.0}},
{{0.5, 0.0}, 0.01, {0.079787126279334219655, 0.0}, {-7.9784466690727600478, 0.0}, {3.989090355106049065, 0.0}, {399.00212057991733661, 0.0}},
{{0.5, 0.0}, 0.05, {0.17833808240219742295, 0.0}, {-3.5637888511690383119, 0.0}, {1.7804080271470640824, 0.0}, {35.816226594092580541, 0.0}},
{{0.5, 0.0}, 1, {0.67139670714180309042, 0.0}, {-0.43109886801837607952, 0.0}, {0.095400514447474534312, 0.0}, {0.88694614115099113018, 0.0}},
{{0.5, 0.0}, 3, {0.065008182877375778114, 0.0}, {0.45604882079463317885, 0.0}, {-0.4668835179408624752, 0.0}, {-0.010999953921729751694, 0.0}},
{{0.5, 0.0}, 9.5, {-0.019454215344600279414, 0.0}, {0.25813589661836274802, 0.0}, {-0.25711199054759431226, 0.0}, {-0.033040315166619371415, 0.0}},
{{0.5, 0.0}, 10.5, {-0.2166097048930148743, 0.0}, {0.11709265671834092934, 0.0}, {-0.10677790886629260199, 0.0}, {-0.22218554568912634712, 0.0}},
{{0.5, 0.0}, 15, {0.13396768882243934618, 0.0}, {0.15650551590730857072, 0.0}, {-0.1609711055347232156, 0.0}, {0.12875083829219572715, 0.0}},
{{0.5, 0.0}, 25, {-0.021120283599650445018, 0.0}, {-0.15817308404205056203, 0.0}, {0.15859548971404357094, 0.0}, {-0.017956821918809433777, 0.0}},
{{0.5, 0.0}, 39, {0.12313814330866488493, 0.0}, {-0.034067309394135743869, 0.0}, {0.032488615249152860729, 0.0}, {0.12357490368551277908, 0.0}},
{{0.5, 0.0}, 41, {-0.019765753988144587814, 0.0}, {0.12303099808763914472, 0.0}, {-0.12278995230729591804, 0.0}, {-0.021266132013603601774, 0.0}},
{{0.5, 0.0}, 60, {-0.031397461182520413009, 0.0}, {0.098104683735037915465, 0.0}, {-0.09784303822518357869, 0.0}, {-0.032215000213645728971, 0.0}},
{{0.5, 0.0}, 500, {-0.016691259174642976677, 0.0}, {0.031537936075464090888, 0.0}, {-0.031521244816289447912, 0.0}, {-0.016722797110718440768, 0.0}},
{{0.0, 0.5}, 0.01, {-0.8966688095124377534, -0.81300604445661677858}, {-1.2397274041045508089, 0.58803020695979676526}, {40.655514963382844801, -44.831981813846568244}, {-68.362882187536109174, -26.661651018032335601}},
{{0.0, 0.5}, 0.05, {-0.035484091076333897959, -1.2092679010189886035}, {-1.8439746740126815808, 0.023270261213549516026}, {12.105488214794000165, -0.33100774730392902576}, {-0.50474332645074504033, -7.9387089913000446462}},
{{0.0, 0.5}, 1, {0.9866705664650292805, 0.0097779709422508797249}, {0.014910121045592374919, -0.64705283739606110838}, {-0.41801095711415760436, 0.73827974344659940854}, {1.1257796126937238139, 0.27412916231239921942}},
{{0.0, 0.5}, 3, {-0.3224634492495648905, 0.33406063249443412436}, {0.50939857527461288385, 0.21146966057879964206}, {-0.47038222840609731736, -0.26991962248697454968}, {-0.4115919619346858157, 0.30847393841015619231}},
{{0.0, 0.5}, 9.5, {-0.25371944416446795096, 0.15081376229666472859}, {0.22997117341267421906, 0.16638774057824211537}, {-0.21731507854261089201, -0.17473597943115289486}, {-0.26644941161370270339, 0.14251396865290809297}},
{{0.0, 0.5}, 10.5, {-0.31432860749850316905, -0.056191116260978807983}, {-0.085684069842948777425, 0.20613487851911914764}, {0.10077779356915206064, -0.20393174837528120376}, {-0.31096912347898374831, -0.066089492776762139541}},
{{0.0, 0.5}, 15, {-0.016574256902595330857, 0.17852822131373038849}, {0.27223208225542783, 0.010869301589666572212}, {-0.27198116469038928716, -0.016819208437566381412}, {-0.025647083139872253483, 0.17836367102923940556}},
{{0.0, 0.5}, 25, {0.12665961498369956199, -0.11094319043858264271}, {-0.16917378957179473388, -0.083062641213996544376}, {0.16671010777942016278, 0.08531287918974399223}, {0.13009093225779853001, -0.10932752220201172761}},
{{0.0, 0.5}, 39, {0.14776436956067168191, 0.054086818858303050653}, {0.082475292768939738652, -0.096903016913560219818}, {-0.084382628103197826147, 0.096225734150659374216}, {0.14673160232945507802, 0.055337638312985954895}},
{{0.0, 0.5}, 41, {-0.13314720677099094509, 0.063958690349385733364}, {0.097528599814735898768, 0.087317166297149571194}, {-0.095919825937229673922, -0.088109892191781174348}, {-0.13435600961104232285, 0.062903665767170266003}},
{{0.0, 0.5}, 60, {-0.12103134870364637535, 0.041304053998693277471}, {0.062983255772739368677, 0.079371656816664707387}, {-0.061979173012938013003, -0.07972131894393394727}, {-0.12156453750870980594, 0.040645582345852134263}},
{{0.0, 0.5}, 500, {-0.045166415577089634327, 0.0091342757384610290745}, {0.013928570429246958325, 0.029619873489153412379}, {-0.013883418032481330835, -0.029629037366304542056}, {-0.045180389285784132509, 0.0091046650584271603367}},
{{0.0, 0.43301270189221932338}, 0.01, {-0.55787336923929103505, -1.0133973454613162128}, {-1.7128817198160200966, 0.33005629340908720742}, {43.885588902397478314, -24.153375675478582219}, {-40.824929976052954754, -25.964162488973895075}},
{{0.0, 0.43301270189221932338}, 0.05, {0.22278927503808487212, -1.1345528213033823254}, {-1.917663191520998232, -0.13180948649804995554}, {9.8311735212079298838, 1.9553329825752254891}, {3.3049762139270269961, -5.816446654723950447}},
{{0.0, 0.43301270189221932338}, 1, {0.93087930635659489249, 0.022057615567729538756}, {0.037282598635083382475, -0.55073891389766801622}, {-0.43046111839598689083, 0.61230891468329401151}, {1.0349472016467177968, 0.25467500158368059932}},
{{0.0, 0.43301270189221932338}, 3, {-0.30712510558806874562, 0.28084414435750072713}, {0.47469317256633507881, 0.18170534668377770601}, {-0.4355698326508441039, -0.23063232637136201703}, {-0.38982329844205029929, 0.25769748550927749465}},
{{0.0, 0.43301270189221932338}, 9.5, {-0.23832827162943847048, 0.1269677259422864374}, {0.21460555205436391109, 0.14100286962231003307}, {-0.20263204058334154803, -0.14799013500018548476}, {-0.25013840631241223593, 0.11988380146565183249}},
{{0.0, 0.43301270189221932338}, 10.5, {-0.29414217321308356057, -0.047991983447970164969}, {-0.081117827586493368197, 0.17402421549246173943}, {0.095229341492679412473, -0.17208816809324607709}, {-0.2908697942063038901, -0.056340820712988910554}},
{{0.0, 0.43301270189221932338}, 15, {-0.016051092829729086476, 0.15081036396738170037}, {0.25490526174699696363, 0.0094963561565405469722}, {-0.25461734452044307003, -0.014522905851651706379}, {-0.024547153259592679387, 0.15064002263573759856}},
{{0.0, 0.43301270189221932338}, 25, {0.11880588253459649447, -0.093638656076196262782}, {-0.15827152397763845999, -0.070289480349338359293}, {0.15595231423171568877, 0.072185488177180387905}, {0.12201058517515877977, -0.092266535063463058604}},
{{0.0, 0.43301270189221932338}, 39, {0.13830736875914802421, 0.045758190057274116464}, {0.077342187279257964517, -0.081827203091007676041}, {-0.079125961401381114054, 0.08125248396145396377}, {0.13733595720429241045, 0.046813529687179414718}},
{{0.0, 0.43301270189221932338}, 41, {-0.12475092134119867241, 0.053976133979114204395}, {0.091232460409769521814, 0.07380676147597812951}, {-0.089723363685986648174, -0.074474431418486432748}, {-0.12587944180211667583, 0.053083302561606755997}},
{{0.0, 0.43301270189221932338}, 60, {-0.11336600775281379103, 0.034858603641535117982}, {0.058919302703242452462, 0.067071070928696827127}, {-0.057978279239864772602, -0.067365597703597236491}, {-0.11386382781419714362, 0.034301863109616671242}},
{{0.0, 0.43301270189221932338}, 500, {-0.042295046198405771423, 0.0077150085603115257116}, {0.013040193158554279462, 0.025023144942099036653}, {-0.012997909596466749272, -0.02503088183226914566}, {-0.042308123376671490346, 0.0076899922097483622779}},
{{0.6324555320336759, 0.0}, 0.01, {0.039049985419481613437, 0.0}, {-12.904590685126290765, 0.0}, {2.469618324691783711, 0.0}, {814.15046040612302503, 0.0}},
{{0.6324555320336759, 0.0}, 0.05, {0.10802609753980529596, 0.0}, {-4.6970250471171269431, 0.0}, {1.364779469432507738, 0.0}, {58.522822166249192111, 0.0}},
{{0.6324555320336759, 0.0}, 1, {0.61373096760334740348, 0.0}, {-0.53722167416641258912, 0.0}, {0.18823185826647296731, 0.0}, {0.87252813790602529618, 0.0}},
{{0.6324555320336759, 0.0}, 3, {0.147961362379175214, 0.0}, {0.43805153535149934331, 0.0}, {-0.45981401652521130444, 0.0}, {0.07288629072330790776, 0.0}},
{{0.6324555320336759, 0.0}, 9.5, {0.032283718633937038569, 0.0}, {0.25695377769194110946, 0.0}, {-0.25844542184928984439, 0.0}, {0.018711603614422619525, 0.0}},
{{0.6324555320336759, 0.0}, 10.5, {-0.18894290106527581226, 0.0}, {0.15802462422327356984, 0.0}, {-0.14890926941268290259, 0.0}, {-0.19635097672222060875, 0.0}},
{{0.6324555320336759, 0.0}, 15, {0.16280565598613667767, 0.0}, {0.1262921146058822714, 0.0}, {-0.13168071397686347271, 0.0}, {0.15853922384051688858, 0.0}},
{{0.6324555320336759, 0.0}, 25, {-0.052889541409554863149, 0.0}, {-0.15056738141887611475, 0.0}, {0.15160739884826104408, 0.0}, {-0.049871142310886850964, 0.0}},
{{0.6324555320336759, 0.0}, 39, {0.11356099528847881911, 0.0}, {-0.058551587804902989866, 0.0}, {0.057092649904081263286, 0.0}, {0.11430613627515997477, 0.0}},
{{0.6324555320336759, 0.0}, 41, {0.0058466663822162915062, 0.0}, {0.12447417488939462067, 0.0}, {-0.12453993329152264603, 0.0}, {0.0043282927849217402737, 0.0}},
{{0.6324555320336759, 0.0}, 60, {-0.010583724850827614287, 0.0}, {0.10246236026557745349, 0.0}, {-0.10237202512002909759, 0.0}, {-0.011437392997329947972, 0.0}},
{{0.6324555320336759, 0.0}, 500, {-0.0098218681266174815372, 0.0}, {0.034304093534274328757, 0.0}, {-0.034294261369086799832, 0.0}, {-0.0098561692941907764177, 0.0}},
};

double rel(cplx got, cplx ref) { return std::abs(got - ref) / std::max(1.0, std::abs(ref)); }

const std::vector<cplx> kOrders = {0.0, 0.25, 0.5, cplx(0.0, 0.5), cplx(0.0, std::sqrt(3.0) / 4.0),
                                   std::sqrt(0.4)};

}  // namespace

TEST_CASE("bessel values match the extended-precision reference in every regime") {
  for (const BesselPoint& p : kReference) {
    CAPTURE(p.nu);
    CAPTURE(p.tau);
    const BesselEval e = bessel_eval(BesselOrder::make(p.nu), p.tau);
    CHECK(rel(e.J, p.J) < 1e-10);
    CHECK(rel(e.Y, p.Y) < 1e-10);
    CHECK(rel(e.J_prime, p.Jp) < 1e-10);
    CHECK(rel(e.Y_prime, p.Yp) < 1e-10);
  }
}

TEST_CASE("regime selection") {
  const BesselOrder o = BesselOrder::make(0.25);
  CHECK(bessel_eval(o, 5.0).regime == BesselRegime::series);
  CHECK(bessel_eval(o, 20.0).regime == BesselRegime::ode_continuation);
  CHECK(bessel_eval(o, 50.0).regime == BesselRegime::asymptotic);
  BesselConfig cfg;
  cfg.tau_switch = 5.0;
  cfg.tau_asym = 30.0;
  CHECK(bessel_eval(o, 20.0, cfg).regime == BesselRegime::ode_continuation);
  CHECK(bessel_eval(o, 35.0, cfg).regime == BesselRegime::asymptotic);
}

TEST_CASE("half-order closed form") {
  const double tau = std::numbers::pi / 2.0;
  const BesselEval e = bessel_eval(BesselOrder::make(0.5), tau);
  CHECK(std::abs(e.J - 2.0 / std::numbers::pi) < 1e-14);
  CHECK(std::abs(e.J.imag()) < 1e-12);
  for (double t : {0.3, 7.0, 22.0, 77.0}) {
    const BesselEval h = bessel_eval(BesselOrder::make(0.5), t);
    const double s = std::sqrt(2.0 / (std::numbers::pi * t));
    CHECK(std::abs(h.J - s * std::sin(t)) < 1e-12);
    CHECK(std::abs(h.Y + s * std::cos(t)) < 1e-12);
  }
}

TEST_CASE("J0 near the origin is one") {
  const BesselEval e = bessel_eval(BesselOrder::make(0.0), 1e-4);
  CHECK(std::abs(e.J - 1.0) < 1e-8);
}

TEST_CASE("order classification") {
  CHECK(BesselOrder::make(0.0).kind == OrderKind::zero);
  CHECK(BesselOrder::make(0.3).kind == OrderKind::real);
  CHECK(BesselOrder::make(cplx(0.0, 0.2)).kind == OrderKind::imaginary);
  CHECK_THROWS_AS(BesselOrder::make(cplx(0.1, 0.2)), Error);
  CHECK_THROWS_AS(BesselOrder::make(1.0), Error);
}

TEST_CASE("arguments outside the supported range are rejected") {
  const BesselOrder o = BesselOrder::make(0.25);
  try {
    bessel_eval(o, 1e-9);
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::out_of_range);
  }
  CHECK_THROWS_AS(bessel_eval(o, 2e6), Error);
}

TEST_CASE("wronskian spot checks") {
  CHECK(wronskian_defect(BesselOrder::make(0.5), 1.0) < 1e-12);
  CHECK(wronskian_defect(BesselOrder::make(0.0), 10.0) < 1e-9);
  CHECK(wronskian_defect(BesselOrder::make(cplx(0.0, std::sqrt(3.0) / 4.0)), 0.05) < 1e-9);
}

TEST_CASE("property: wronskian identity over orders and arguments") {
  for (cplx nu : kOrders) {
    for (int i = 0; i <= 80; ++i) {
      const double tau = std::pow(10.0, -2.0 + 4.0 * i / 80.0);
      CAPTURE(nu);
      CAPTURE(tau);
      CHECK(wronskian_defect(BesselOrder::make(nu), tau) <= 1e-9);
    }
  }
}

TEST_CASE("property: imaginary residues vanish for real orders") {
  for (double nu : {0.0, 0.25, 0.5, 0.6324555320336759}) {
    for (double tau : {0.01, 3.0, 17.0, 300.0}) {
      const BesselEval e = bessel_eval(BesselOrder::make(nu), tau);
      CHECK(std::abs(e.J.imag()) < 1e-12);
      CHECK(std::abs(e.Y.imag()) < 1e-12);
      CHECK(std::abs(e.J_prime.imag()) < 1e-12);
      CHECK(std::abs(e.Y_prime.imag()) < 1e-12);
    }
  }
}

TEST_CASE("property: large-argument envelope is bounded") {
  for (cplx nu : kOrders) {
    double peak = 0.0;
    for (int i = 0; i <= 200; ++i) {
      const double tau = 20.0 * std::pow(1000.0, i / 200.0);
      const BesselEval e = bessel_eval(BesselOrder::make(nu), tau);
      peak = std::max({peak, std::abs(e.J) * std::sqrt(tau), std::abs(e.Y) * std::sqrt(tau)});
    }
    CAPTURE(nu);
    CHECK(peak < 2.0);
  }
}

TEST_CASE("property: small-argument growth of J is controlled by Re nu") {
  for (cplx nu : kOrders) {
    double peak = 0.0;
    for (int i = 0; i <= 100; ++i) {
      const double tau = std::pow(10.0, -6.0 + 6.0 * i / 100.0);
      const BesselEval e = bessel_eval(BesselOrder::make(nu), tau);
      peak = std::max(peak, std::abs(e.J) * std::pow(tau, -nu.real()));
    }
    CAPTURE(nu);
    CHECK(peak < 5.0);
  }
}

TEST_CASE("property: derivative recurrence agrees with finite differences") {
  for (cplx nu : kOrders) {
    for (double tau : {0.5, 5.0, 50.0}) {
      const cplx rec = 0.5 * (bessel_j(nu - 1.0, tau).first - bessel_j(nu + 1.0, tau).first);
      const double h = 1e-5 * tau;
      const cplx fd = (bessel_j(nu, tau + h).first - bessel_j(nu, tau - h).first) / (2.0 * h);
      CAPTURE(nu);
      CAPTURE(tau);
      CHECK(std::abs(rec - fd) <= 1e-6 * std::max(1e-3, std::abs(rec)));
      CHECK(std::abs(rec - bessel_eval(BesselOrder::make(nu), tau).J_prime) <= 1e-9 * std::max(1e-3, std::abs(rec)));
    }
  }
}

TEST_CASE("property: regimes agree at the switch points") {
  for (cplx nu : kOrders) {
    const BesselOrder o = BesselOrder::make(nu);
    BesselConfig series_only{1e6, 1e6};
    BesselConfig asym_only{1e-8, 1e-8};
    BesselConfig cont_only{10.0, 40.5};
    const double s = 10.0;
    const BesselEval a = bessel_eval(o, s, series_only);
    const BesselEval b = bessel_eval(o, s, BesselConfig{5.0, 12.0});
    CHECK(std::abs(a.J - b.J) <= 1e-9 * std::abs(a.J));
    CHECK(std::abs(a.Y - b.Y) <= 1e-9 * std::abs(a.Y));
    const double q = 40.0;
    const BesselEval c = bessel_eval(o, q, cont_only);
    const BesselEval d = bessel_eval(o, q, asym_only);
    CHECK(std::abs(c.J - d.J) <= 1e-9 * std::abs(c.J));
    CHECK(std::abs(c.Y - d.Y) <= 1e-9 * std::abs(c.Y));
  }
}
