"""Frozen curve constants for the two supported security levels.

Both curves are Cocks-Pinch curves with embedding degree 2 and CM
discriminant -3: E: y^2 = x^3 + b over F_p carries the first pairing
group, the quadratic twist E': y^2 = x^3 - b over the same field
carries the second, and pairing values live in the order-n subgroup of
F_p^2 = F_p(i).  p = 3 mod 4, n | p + 1, and the trace is +-n, so the
squared-modulus sizes (2048 and 3072 bits) line up with the 112- and
128-bit symmetric equivalents.

The constants were produced by tools/generate_curves.py; the search is
deterministic and can be replayed.
"""

from dataclasses import dataclass


@dataclass(frozen=True)
class CurveConstants:
    security_level: int
    p: int          # base field prime, 3 mod 4
    n: int          # order of the pairing groups
    b: int          # curve coefficient of E; the twist uses -b
    trace: int      # Frobenius trace of E, so #E(F_p) = p + 1 - trace
    h1: int         # cofactor of the order-n subgroup of E
    h2: int         # cofactor on the twist
    g1: tuple[int, int]   # generator of the order-n subgroup of E
    g2: tuple[int, int]   # generator on the twist (twist coordinates)


LEVEL_112 = CurveConstants(
    security_level=112,
    p=89884656743115795386465259539451236680898848947115328636715040578866337902750481566817362242688429014585930677725088990648598841545578997056702911467851933185140930494067462604786770686229583037086008593076537941112433847753835872127573689163189627389265720283092373682147671603473145832722429035750008809047,
    n=20219960000362979846000261315264723005227858316905429360827707686949,
    b=2,
    trace=-20219960000362979846000261315264723005227858316905429360827707686949,
    h1=4445342955253236182719901193814171864763172214877272106930838541167890403118861498583646995493785021102315738327423406831190258326499650259399300609143771765007257990522924029173945746748451831934994286947278936355336483391221980967403647353,
    h2=4445342955253236182719901193814171864763172214877272106930838541167890403118861498583646995493785021102315738327423406831190258326499650259399300609143771765007257990522924029173945746748451831934994286947278936355336483391221980967403647351,
    g1=(45260955316431058379739381773509006550962565607265533227426943904466783603534271592779636648210691031838545442112669024122571171087887023403568942776495277692780421320680208609279867972060224503882313088867668686287717777766800704626866578095466633367495056180185124214894492319190193094367837357039081594312,
        71742440931720583701659623655645431398076622340552290566355011373702662739226815773478093649927887358452926074923174133875102265304955403736802850832872979882338270988785981529402862264930830694589628954939691926317778454749203350131370605299809388963421415351661344713549649979818223158440541225960516124898),
    g2=(48515714570313278269939167065648800038696203231169794244504751821612975883745630583916520670972117233295603438090959185670957620930695734693493167855567230777854056980444922481331185607259422438825454478890729913960094809470757858188087228481173024740390975636527418104515453167701795996075953294470202248730,
        32333590126074426942889495365206043043169711554348948325543374824301229619560457754418872583036450572042797320140599659482616798755722712759179606283900876236138138042367206336602736758492654567014074050903400191603344238108619963154176833351450058730757238640282213023265918240129378261807119210804045524315),
)

LEVEL_128 = CurveConstants(
    security_level=128,
    p=1205156213460516294290058303014157056456046623972844475679837519532628695795901600334542512053673024831724383140444002393931208489397479162484806493945433221984303356236834931192628856401304589485523772103549836266577150172694897620358244012325380101936098218282650438753366595106826993249716701597404529571547110537208395782439743499394699132987897167628141668118183173719451258653356403726784716813995462077842803803522028486932360018612312912707167700032409219,
    n=86844066927987146567678238756515930889952488499230423029593188005934847230001,
    b=3,
    trace=86844066927987146567678238756515930889952488499230423029593188005934847230001,
    h1=13877242926219198775900320436485447384820349663022273073758816467204810746223317111695585613022766828292236621988171932880229375258744109675983074483601776560458919922004072281407357496844584407036315879951873982965096858041072014596554383259243973025237941205184694662703520853291158105140178254506017990673288012547257542240769431340024580011353338381219344349623654801182294571809219,
    h2=13877242926219198775900320436485447384820349663022273073758816467204810746223317111695585613022766828292236621988171932880229375258744109675983074483601776560458919922004072281407357496844584407036315879951873982965096858041072014596554383259243973025237941205184694662703520853291158105140178254506017990673288012547257542240769431340024580011353338381219344349623654801182294571809221,
    g1=(486309603107023433249694256900653546534909007838578327094331433769686589212821466304123937435606562631991226360094055242862914750077697066808251935207305918496677223379657971809182434447093883150719105862282782299465480307370825150741220410250972273708296722322337966709521411464965365528869467724932172398487218139067488889849001437124651066801891926011858146090788006355418128625192428331088233886254783752712744457193842188830174702233664457686099138755331883,
        1052079685845530987086686622238878780043366020548528797412122758712274053253851708444710252519566635482327934590404045481268828570093484596912244617550819084617838368387437160756163501695198548883455450261348808493957714549415936035168025313691274782288965845402687549550017708845836848751152925722815750829011379366879148230246886299995361507800769921525510585982783870304979133903514623507375551849191557351630040897727199961221432637032301844782396533845451113),
    g2=(1203392920594911738443403845846731728205899227883702105556977538811723723455495309646237020027020229721952714873390486894927137037398277433209587284796662381109977736890857027570541202258547662154666432207075907473757981883681988968103976144142063531770939280253231790607330653026848810409296256315640262880737140667010825462401772418232404576450431737835701826121380844660452073993148705148942083564312756536839282597815133315057245009032458049584449237307763104,
        989700618750546921326478118176543319880736246636997585028314358830537631407161369991123904058999410642195687000001190529932818007935757699914414327954150752214357118006921732108430421999797598830749756232593365338374334414681772694094772828539183220325009986145062633741282944003295129611982225768006983964309056886719646597097406008982537609888446607460671962137928363057894691348520243272408662671942468255987866411036581689452013061774094986879678459614599678),
)

BY_LEVEL = {112: LEVEL_112, 128: LEVEL_128}
